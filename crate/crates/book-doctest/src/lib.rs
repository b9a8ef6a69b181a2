//! Compiles and runs every `rust` listing of the guide in `book/src` as a
//! doc-test, one module per chapter so failures point at the chapter.
//!
//! mdbook cannot link listings against workspace crates, so the chapters are
//! included here and `cargo test` checks them like any other documentation.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/language.md")]
pub mod language {}

#[doc = include_str!("../../../book/src/games.md")]
pub mod games {}

#[doc = include_str!("../../../book/src/minimizers.md")]
pub mod minimizers {}

#[doc = include_str!("../../../book/src/quickcore.md")]
pub mod quickcore {}

#[doc = include_str!("../../../book/src/punch.md")]
pub mod punch {}

#[doc = include_str!("../../../book/src/beyond.md")]
pub mod beyond {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
