use crate::error::{Error, Result};

/// Resource bounds. Exceeding one is an error, never a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Total number of Hall letters of a free nilpotent group.
    pub max_hall_rank: usize,
    /// Largest nilpotency class for loop-group towers.
    pub max_class: usize,
    /// Largest simplicial degree for loop-group computations.
    pub max_degree: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_hall_rank: 512, max_class: 4, max_degree: 6 }
    }
}

impl Caps {
    pub fn unbounded() -> Self {
        Caps { max_hall_rank: usize::MAX, max_class: usize::MAX, max_degree: usize::MAX }
    }

    pub fn check_hall_rank(&self, needed: usize) -> Result<()> {
        check("hall rank", needed, self.max_hall_rank)
    }

    pub fn check_class(&self, needed: usize) -> Result<()> {
        check("class", needed, self.max_class)
    }

    pub fn check_degree(&self, needed: usize) -> Result<()> {
        check("degree", needed, self.max_degree)
    }
}

fn check(what: &'static str, needed: usize, limit: usize) -> Result<()> {
    if needed > limit {
        Err(Error::ResourceCap { what, needed, limit })
    } else {
        Ok(())
    }
}
