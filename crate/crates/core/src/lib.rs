pub mod algebra;
pub mod duality;
pub mod exactlin;
pub mod format;
pub mod lab;
pub mod modrep;
pub mod proplab;
pub mod residual;
pub mod selectors;
