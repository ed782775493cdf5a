use core::cell::Cell;

use crate::error::{Error, Result};

/// Resource limits for a computation: a cap on reduction steps and an optional
/// interrupt hook (the std front-end wires a wall clock into it).
///
/// Exceeding either yields an error; a budget failure never produces a value.
pub struct Budget<'a> {
    limit: Option<u64>,
    used: Cell<u64>,
    interrupt: Option<&'a dyn Fn() -> bool>,
}

impl<'a> Budget<'a> {
    pub fn unlimited() -> Self {
        Budget { limit: None, used: Cell::new(0), interrupt: None }
    }

    pub fn with_steps(limit: u64) -> Self {
        Budget { limit: Some(limit), used: Cell::new(0), interrupt: None }
    }

    /// `hook` is polled every few hundred steps; returning `true` aborts.
    pub fn with_interrupt(mut self, hook: &'a dyn Fn() -> bool) -> Self {
        self.interrupt = Some(hook);
        self
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }

    pub fn limit(&self) -> Option<u64> {
        self.limit
    }

    /// Accounts for one reduction step.
    #[inline]
    pub fn tick(&self) -> Result<()> {
        let used = self.used.get() + 1;
        self.used.set(used);
        if let Some(limit) = self.limit {
            if used > limit {
                return Err(Error::BudgetExhausted { limit });
            }
        }
        if used.is_multiple_of(256) {
            if let Some(hook) = self.interrupt {
                if hook() {
                    return Err(Error::Interrupted);
                }
            }
        }
        Ok(())
    }
}

impl Default for Budget<'_> {
    fn default() -> Self {
        Budget::unlimited()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_limit() {
        let b = Budget::with_steps(3);
        assert!(b.tick().is_ok());
        assert!(b.tick().is_ok());
        assert!(b.tick().is_ok());
        assert_eq!(b.tick(), Err(Error::BudgetExhausted { limit: 3 }));
    }

    #[test]
    fn interrupt_hook() {
        let hook = || true;
        let b = Budget::unlimited().with_interrupt(&hook);
        let mut res = Ok(());
        for _ in 0..256 {
            res = b.tick();
        }
        assert_eq!(res, Err(Error::Interrupted));
    }
}
