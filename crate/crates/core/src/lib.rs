pub mod dist;
pub mod dsl;
pub mod evalrep;
pub mod field;
pub mod grade;
pub mod modealg;
pub mod relcheck;
pub mod report;
pub mod rmat;
