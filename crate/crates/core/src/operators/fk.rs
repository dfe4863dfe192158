//! Inner derivations of the `fk` bracket: the Witt family `W_{s,s0}`, the
//! abelian ideal spanned by `X`, and the action of `W` on `X`.

use num_traits::Zero;

use crate::algebra::FunctionalSpec;
use crate::analysis::invariant::{adjoint_module_action, invariant_subspace_search, Irreducibility};
use crate::error::Error;
use crate::rational::{int, rat, Rational};
use crate::report::VerdictReport;
use crate::window::Window;

use super::generators::{AlgebraKind, GeneratorTag};
use super::tables::GeneratorCache;
use super::{op_commutator, Decision, Operator};

use GeneratorTag::{W, X};

struct Checker<'a> {
    report: VerdictReport,
    window: &'a Window,
}

impl Checker<'_> {
    fn identity(&mut self, label: String, lhs: &Operator, rhs: &Operator) -> Result<bool, Error> {
        let (equal, decision) = lhs.equals(rhs, self.window)?;
        if decision == Decision::WindowDecided {
            self.report.bump("window_decided");
        }
        self.report.bump("identities");
        if !equal {
            self.report.fail(format!("{label}: lhs {lhs}, rhs {rhs}"));
        }
        Ok(equal)
    }
}

/// Oracle value of `[W_{s,s0}, X_{r,0}]` as `(coefficient, generator)`.
pub fn w_on_x_r0(k: i64, beta_s0: &Rational, s: i64, r: i64) -> (Rational, GeneratorTag) {
    if r + s + k != 0 {
        (beta_s0 * rat(r * (r + k - s), r + s + k), X(r + s + k, 0))
    } else {
        (beta_s0 * int(r * s), X(-1, 1))
    }
}

/// Oracle value of `[W_{s,s0}, X_{1,-1}]`.
pub fn w_on_x_1m1(k: i64, beta_s0: &Rational, s: i64) -> (Rational, GeneratorTag) {
    if s + k != 0 {
        (beta_s0 * rat(2 * (k - s), s + k), X(s + k, 0))
    } else {
        (beta_s0 * int(2 * s), X(-1, 1))
    }
}

pub fn verify_fk_structure(k: i64, f: &FunctionalSpec, s0: i64, window: &Window) -> Result<VerdictReport, Error> {
    let b0 = f.beta(s0);
    if b0.is_zero() {
        return Err(Error::Precondition(format!("beta_{s0} = 0; choose s0 with f(M_s0) != 0")));
    }
    let algebra = AlgebraKind::Fk { k, f: f.clone() };
    let mut cache = GeneratorCache::new(algebra.clone());
    let mut c = Checker {
        report: VerdictReport::new("section3-structure").param("k", k).param("beta", f).param("s0", s0).param("window", window),
        window,
    };
    let n = window.bound();
    let range = || -n..=n;

    // (a) Witt relation on W_{s,s0}
    for r in range() {
        for s in range() {
            let lhs = op_commutator(&cache.get(W(r, s0))?, &cache.get(W(s, s0))?)?;
            let rhs = cache.get(W(r + s + k, s0))?.scale(&(&b0 * int(s - r)));
            c.identity(format!("[W({r},{s0}), W({s},{s0})]"), &lhs, &rhs)?;
        }
    }
    // (b) X is abelian
    let x1 = cache.get(X(1, -1))?;
    for r in range().filter(|r| *r != 0) {
        let xr = cache.get(X(r, 0))?;
        for s in range().filter(|s| *s != 0) {
            let lhs = op_commutator(&xr, &cache.get(X(s, 0))?)?;
            c.identity(format!("[X({r},0), X({s},0)] = 0"), &lhs, &Operator::zero())?;
        }
        c.identity(format!("[X({r},0), X(1,-1)] = 0"), &op_commutator(&xr, &x1)?, &Operator::zero())?;
    }
    // (c) W on X, branch by branch, against the oracle and the printed values
    let mut printed_mismatch: Vec<String> = Vec::new();
    for s in range() {
        let ws = cache.get(W(s, s0))?;
        for r in range().filter(|r| *r != 0) {
            let lhs = op_commutator(&ws, &cache.get(X(r, 0))?)?;
            let (coef, tag) = w_on_x_r0(k, &b0, s, r);
            let branch = if r + s + k != 0 {
                "r+s+k != 0"
            } else if s != 0 {
                "r+s+k = 0, s != 0"
            } else {
                "r = -k, s = 0"
            };
            c.report.bump(&format!("branch [W, X(r,0)] {branch}"));
            c.identity(format!("[W({s},{s0}), X({r},0)] ({branch})"), &lhs, &cache.get(tag)?.scale(&coef))?;
            let printed = match branch {
                "r+s+k != 0" => Some(&b0 * rat(r * (r - s + k), r + s + k)),
                "r+s+k = 0, s != 0" => Some(&b0 * rat(r, s)),
                _ => Some(Rational::zero()),
            };
            if printed.as_ref() != Some(&coef) && !(coef.is_zero() && printed.as_ref().is_some_and(Zero::is_zero)) {
                printed_mismatch.push(format!(
                    "[W({s},{s0}), X({r},0)] printed {}*{tag}, exact {coef}*{tag}",
                    printed.map(|p| p.to_string()).unwrap_or_default()
                ));
            }
        }
        let lhs = op_commutator(&ws, &x1)?;
        let (coef, tag) = w_on_x_1m1(k, &b0, s);
        let branch = if s + k != 0 { "s != -k" } else { "s = -k" };
        c.report.bump(&format!("branch [W, X(1,-1)] {branch}"));
        c.identity(format!("[W({s},{s0}), X(1,-1)] ({branch})"), &lhs, &cache.get(tag)?.scale(&coef))?;
        if s + k == 0 {
            let printed = (s != 0).then(|| &b0 * rat(2, s));
            if printed.as_ref() != Some(&coef) {
                printed_mismatch.push(format!(
                    "[W({s},{s0}), X(1,-1)] printed {}*{tag}, exact {coef}*{tag}",
                    printed.map(|p| p.to_string()).unwrap_or_else(|| "undefined".into())
                ));
            }
        }
    }
    if !printed_mismatch.is_empty() {
        c.report.flag(format!(
            "{} printed W-on-X coefficients differ from the exact ones; e.g. {}",
            printed_mismatch.len(),
            printed_mismatch[0]
        ));
        for m in printed_mismatch.iter().take(5) {
            c.report.note(m.clone());
        }
    }
    c.report.note("printed [W(s,s0), X(1,-1)] for s != -k uses the undefined symbol t; the exact coefficient is 2 beta_s0 (k-s)/(s+k)");

    // (d) X is a W-submodule; invariant-subspace search on the window
    let acting: Vec<(String, Operator)> =
        range().map(|s| Ok((format!("W({s},{s0})"), cache.get(W(s, s0))?))).collect::<Result<_, Error>>()?;
    let x_basis = |lo: i64, hi: i64, cache: &mut GeneratorCache| -> Result<Vec<(GeneratorTag, Operator)>, Error> {
        let mut out = vec![(X(1, -1), cache.get(X(1, -1))?)];
        for r in (lo..=hi).filter(|r| *r != 0) {
            out.push((X(r, 0), cache.get(X(r, 0))?));
        }
        Ok(out)
    };
    let basis = x_basis(-n, n, &mut cache)?;
    let extended = x_basis(-3 * n - k.abs(), 3 * n + k.abs(), &mut cache)?;
    let module = adjoint_module_action(&acting, &basis, &extended, window)?;
    for cex in &module.not_closed {
        c.report.fail(format!("not in span of X: {cex}"));
    }
    c.report.stat("x_window_dim", module.dim());
    c.report.stat("projected_escapes", module.escapes.len());
    let search = invariant_subspace_search(&module);
    c.report.note(format!("invariant-subspace search: {}", search.method));
    match &search.verdict {
        Irreducibility::Irreducible => c.report.stat("x_irreducible_on_window", "yes"),
        Irreducibility::Reducible(rows) => {
            c.report.stat("x_irreducible_on_window", "no");
            c.report.fail(format!("proper W-invariant subspace of X of dimension {} on the window", rows.len()));
        }
        Irreducibility::Inconclusive => {
            c.report.stat("x_irreducible_on_window", "inconclusive");
            c.report.flag("invariant-subspace search inconclusive");
        }
    }

    // (e) W_{r,s} is proportional to W_{r,s0} with ratio beta_s / beta_s0
    for s in range() {
        let ratio = f.beta(s) / &b0;
        for r in range() {
            let lhs = cache.get(W(r, s))?;
            c.identity(format!("W({r},{s}) = {ratio}*W({r},{s0})"), &lhs, &cache.get(W(r, s0))?.scale(&ratio))?;
        }
        let beta0 = f.beta(0);
        if beta0.is_zero() || f.beta(s) / beta0 != ratio {
            c.report.bump("printed_ratio_mismatches");
        }
        c.report.stat(&format!("ratio W(r,{s})/W(r,{s0})"), ratio);
    }
    if c.report.count("printed_ratio_mismatches") > 0 {
        c.report.flag(format!(
            "printed ratio beta_s/beta_0 differs from the exact beta_s/beta_s0 for {} values of s (beta_0 = {})",
            c.report.count("printed_ratio_mismatches"),
            f.beta(0)
        ));
    }
    Ok(c.report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn witt_relation_example() {
        let mut cache = GeneratorCache::new(AlgebraKind::Fk { k: 0, f: FunctionalSpec::default() });
        let lhs = op_commutator(&cache.get(W(1, 0)).unwrap(), &cache.get(W(2, 0)).unwrap()).unwrap();
        assert_eq!(lhs, cache.get(W(3, 0)).unwrap());
        assert_eq!(cache.get(W(2, 5)).unwrap(), cache.get(W(2, 0)).unwrap());
    }

    #[test]
    fn structure_k1() {
        let r = verify_fk_structure(1, &FunctionalSpec::default(), 0, &Window::symmetric(3)).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.status, Status::Flagged);
        assert_eq!(r.stats["x_irreducible_on_window"], "yes");
    }

    #[test]
    fn structure_with_sparse_beta() {
        let f: FunctionalSpec = "support:1=2,-2=1/2".parse().unwrap();
        let r = verify_fk_structure(0, &f, 1, &Window::symmetric(2)).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn zero_beta_at_s0_is_rejected() {
        let f: FunctionalSpec = "support:1=2".parse().unwrap();
        assert!(verify_fk_structure(0, &f, 0, &Window::symmetric(2)).is_err());
    }
}
