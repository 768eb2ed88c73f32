//! Holds the `acceptance` test target only. It lives in its own package so
//! that cargo runs it after every suite of the library crate.
