pub mod arborification;
pub mod character;
pub mod enumerate;
pub mod error;
pub mod forest;
pub mod lincomb;
pub mod models;
pub mod qsh;
pub mod rota_baxter;
pub mod scalar;
pub mod word;

pub use error::{Error, Result};
