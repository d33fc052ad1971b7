#![allow(dead_code)]

pub mod curves;
