#![allow(dead_code)]

pub mod kh_oracle;
pub mod strategies;
pub mod window;
