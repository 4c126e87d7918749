#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod certify;
pub mod hitprob;
pub mod numerics;
pub mod oracle;
pub mod walkmodel;
