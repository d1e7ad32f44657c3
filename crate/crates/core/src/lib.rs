pub mod abstractcx;
pub mod bggcore;
pub mod derham;
pub mod error;
pub mod forms;
pub mod ratpoly;
pub mod report;
pub mod verify;
