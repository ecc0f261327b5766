//! Optional process-wide audit: when enabled, every freshly computed reduced
//! basis is re-checked by reducing all of its S-polynomials.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::polyring::{MonomialOrder, Poly, VarSet};

static ENABLED: AtomicBool = AtomicBool::new(false);
static CHECKED: AtomicU64 = AtomicU64::new(0);
static FAILED: AtomicU64 = AtomicU64::new(0);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditCounts {
    pub checked: u64,
    pub failed: u64,
}

pub fn enable_audit(on: bool) {
    ENABLED.store(on, Ordering::SeqCst);
}

pub fn audit_counts() -> AuditCounts {
    AuditCounts {
        checked: CHECKED.load(Ordering::SeqCst),
        failed: FAILED.load(Ordering::SeqCst),
    }
}

pub(crate) fn record(_vars: &VarSet, order: MonomialOrder, basis: &[Poly]) {
    if !ENABLED.load(Ordering::Relaxed) {
        return;
    }
    CHECKED.fetch_add(1, Ordering::SeqCst);
    if !super::buchberger::all_spolys_reduce(basis, order) {
        FAILED.fetch_add(1, Ordering::SeqCst);
    }
}
