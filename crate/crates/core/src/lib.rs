pub mod document;
pub mod dynamics;
pub mod exact_int;
pub mod monodromy;
pub mod normal_forms;
