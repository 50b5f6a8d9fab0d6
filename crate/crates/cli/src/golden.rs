//! Expected values compared against unless `--no-golden` is given.

use gcr_engine::rootdata::RootType;

pub const VERSION: u32 = 1;

/// (classes including the trivial one, non-trivial classes)
pub fn class_count(ty: RootType) -> Option<(usize, usize)> {
    match ty {
        RootType::E6 => Some((56, 55)),
        RootType::E7 => Some((96, 95)),
        RootType::E8 => Some((296, 295)),
        _ => None,
    }
}

/// |K′| column of the non-separable rows, sorted.
pub fn scan_orders(ty: RootType) -> Option<&'static [usize]> {
    match ty {
        RootType::E6 => Some(&[2, 4, 4, 6, 6, 8, 12, 18, 36, 36, 72]),
        RootType::E7 | RootType::E8 => Some(&[14, 42]),
        _ => None,
    }
}

/// G-cr classes among the non-trivial ones.
pub fn gcr_count(ty: RootType) -> Option<usize> {
    match ty {
        RootType::E7 => Some(19),
        RootType::E8 => Some(31),
        _ => None,
    }
}

pub const E6_ORDER_H_PRIME: usize = 1458;
