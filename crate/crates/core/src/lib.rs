//! Exact symbolic computations for the sub-Hankel prehomogeneous vector space.

pub mod exact;
pub mod legendre;
pub mod orthopoly;
pub mod report;
pub mod space;
pub mod weyl;
