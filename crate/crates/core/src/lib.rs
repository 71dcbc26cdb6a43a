pub mod cli;
pub mod flype;
pub mod matrix_model;
pub mod oracle;
pub mod series;
pub mod skeleton;
pub mod surd;
pub mod verify;
