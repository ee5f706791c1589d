pub mod bilinear;
pub mod embeddings;
pub mod identities;
pub mod jn;
pub mod keys;
pub mod lorentz;
pub mod morrey;
pub mod special_fns;
pub mod wbmo;

pub use bilinear::check_bilinear;
pub use embeddings::{check_embeddings, embedding_constant, DEFAULT_TRIPLES};
pub use identities::check_identities;
pub use jn::{check_john_nirenberg, JnSetting};
pub use keys::check_pointwise_keys;
pub use lorentz::check_lorentz_interpolation;
pub use morrey::check_morrey_interpolation;
pub use special_fns::special_function_checks;
pub use wbmo::estimate_w_vs_bmo;
