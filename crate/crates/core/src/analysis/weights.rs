//! Simultaneous eigenspace (weight) decompositions on a window.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::{Basis, Element};
use crate::brackets::{tri_bracket, TriBracketSpec};
use crate::error::Error;
use crate::linalg::nullspace;
use crate::operators::{make_generator, GeneratorId, GeneratorTag, Operator};
use crate::rational::Rational;
use crate::report::VerdictReport;
use crate::window::Window;

use super::subspace::to_coords;
use super::WindowSubspace;

pub type WeightLabel = Vec<Rational>;

#[derive(Clone, Debug)]
pub struct WeightDecomposition {
    pub cartan_pairs: Vec<(Element, Element)>,
    pub spaces: BTreeMap<WeightLabel, WindowSubspace>,
    /// Every acting map keeps window vectors inside the window.
    pub acts_within_window: bool,
    pub is_weight_module: bool,
    pub is_harish_chandra_on_window: bool,
    pub is_intermediate_series_on_window: bool,
    pub notes: Vec<String>,
}

impl WeightDecomposition {
    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(WindowSubspace::dim).sum()
    }

    pub fn max_dim(&self) -> usize {
        self.spaces.values().map(WindowSubspace::dim).max().unwrap_or(0)
    }

    /// Dimension of the weight space with every component zero.
    pub fn zero_weight_dim(&self) -> usize {
        self.spaces.iter().filter(|(w, _)| w.iter().all(Zero::is_zero)).map(|(_, s)| s.dim()).sum()
    }

    pub fn to_report(&self, check: &str, window: &Window) -> VerdictReport {
        let mut report = VerdictReport::new(check).param("window", window);
        let pairs: Vec<String> = self.cartan_pairs.iter().map(|(a, b)| format!("({a}, {b})")).collect();
        report.set_param("cartan", if pairs.is_empty() { "-".into() } else { pairs.join(" ") });
        for (w, s) in &self.spaces {
            report.stat(&format!("weight {}", format_label(w)), s);
        }
        report.stat("spaces", self.spaces.len());
        report.stat("max_dim", self.max_dim());
        report.stat("zero_weight_dim", self.zero_weight_dim());
        for (key, value) in [
            ("is_weight_module", self.is_weight_module),
            ("is_harish_chandra_on_window", self.is_harish_chandra_on_window),
            ("is_intermediate_series_on_window", self.is_intermediate_series_on_window),
        ] {
            report.stat(key, if value { "yes" } else { "no" });
        }
        for n in &self.notes {
            report.note(n.clone());
        }
        report
    }
}

pub fn format_label(w: &WeightLabel) -> String {
    let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

struct Decomposed {
    spaces: BTreeMap<WeightLabel, WindowSubspace>,
    acts_within_window: bool,
    notes: Vec<String>,
}

type BasisMap<'a> = Box<dyn Fn(Basis) -> Result<Element, Error> + 'a>;

/// Simultaneous eigenspaces of linear maps given on basis vectors.
fn simultaneous_eigenspaces(window: &Window, maps: &[BasisMap<'_>]) -> Result<Decomposed, Error> {
    let basis = window.basis();
    let n = basis.len();
    let mut notes = Vec::new();
    let mut acts_within_window = true;
    // matrices[m][j] = coordinates of maps[m](basis[j])
    let mut matrices: Vec<Vec<Vec<Rational>>> = Vec::new();
    for map in maps {
        let mut cols = Vec::with_capacity(n);
        for b in &basis {
            let img = map(*b)?;
            let (inside, outside) = img.split_by_window(window);
            if !outside.is_zero() {
                acts_within_window = false;
                notes.push(format!("image of {b} leaves the window: {outside}"));
            }
            cols.push(to_coords(window, &inside).expect("split part lies in the window"));
        }
        matrices.push(cols);
    }
    let diagonal =
        matrices.iter().all(|cols| cols.iter().enumerate().all(|(j, c)| c.iter().enumerate().all(|(i, x)| i == j || x.is_zero())));
    let mut spaces: BTreeMap<WeightLabel, WindowSubspace> = BTreeMap::new();
    if diagonal {
        for (j, b) in basis.iter().enumerate() {
            let label: WeightLabel = matrices.iter().map(|cols| cols[j][j].clone()).collect();
            spaces.entry(label).or_insert_with(|| WindowSubspace::zero(*window)).insert(&Element::basis(*b))?;
        }
        return Ok(Decomposed { spaces, acts_within_window, notes });
    }
    // Candidate eigenvalues are the diagonal entries, which is exact for triangular maps.
    let candidates: Vec<Vec<Rational>> = matrices
        .iter()
        .map(|cols| {
            let mut v: Vec<Rational> = (0..n).map(|j| cols[j][j].clone()).collect();
            v.sort();
            v.dedup();
            v
        })
        .collect();
    let mut labels: Vec<WeightLabel> = vec![Vec::new()];
    for cands in &candidates {
        labels = labels.into_iter().flat_map(|l| cands.iter().map(move |c| [l.clone(), vec![c.clone()]].concat())).collect();
    }
    for label in labels {
        let mut rows = Vec::new();
        for (cols, lambda) in matrices.iter().zip(&label) {
            for i in 0..n {
                rows.push((0..n).map(|j| if i == j { &cols[j][i] - lambda } else { cols[j][i].clone() }).collect());
            }
        }
        let kernel = WindowSubspace::from_rows(*window, nullspace(&rows, n));
        if !kernel.is_zero() {
            spaces.insert(label, kernel);
        }
    }
    notes.push("maps are not diagonal on the window basis; eigenvalues taken from diagonal entries".into());
    Ok(Decomposed { spaces, acts_within_window, notes })
}

fn finish(cartan_pairs: Vec<(Element, Element)>, window: &Window, d: Decomposed, wide: Option<Decomposed>) -> WeightDecomposition {
    let total: usize = d.spaces.values().map(WindowSubspace::dim).sum();
    let complete = total == window.dim();
    let mut notes = d.notes;
    if !complete {
        notes.push(format!("eigenspaces cover {total} of {} dimensions", window.dim()));
    }
    let is_weight_module = complete && d.acts_within_window;
    let mut grows = Vec::new();
    if let Some(wide) = &wide {
        for (label, space) in &d.spaces {
            let wide_dim = wide.spaces.get(label).map_or(0, WindowSubspace::dim);
            if wide_dim > space.dim() {
                grows.push(format!("{}: {} -> {wide_dim}", format_label(label), space.dim()));
            }
        }
    }
    if !grows.is_empty() {
        notes.push(format!("weight spaces grow on the widened window: {}", grows.join("; ")));
    }
    let is_harish_chandra_on_window = is_weight_module && grows.is_empty();
    let is_intermediate_series_on_window = is_harish_chandra_on_window && d.spaces.values().all(|s| s.dim() <= 1);
    WeightDecomposition {
        cartan_pairs,
        spaces: d.spaces,
        acts_within_window: d.acts_within_window,
        is_weight_module,
        is_harish_chandra_on_window,
        is_intermediate_series_on_window,
        notes,
    }
}

/// Weight decomposition under `ad(h1, h2)` for the given Cartan pairs. The
/// Harish-Chandra verdict compares every weight space against the same
/// decomposition on a window widened by its own length.
pub fn weight_decompose(spec: &TriBracketSpec, cartan: &[(Element, Element)], window: &Window) -> Result<WeightDecomposition, Error> {
    let run = |w: &Window| {
        let maps: Vec<BasisMap<'_>> =
            cartan.iter().map(|(h1, h2)| Box::new(move |b: Basis| tri_bracket(spec, h1, h2, &Element::basis(b))) as BasisMap<'_>).collect();
        simultaneous_eigenspaces(w, &maps)
    };
    let d = run(window)?;
    let wide = run(&window.widen(window.len() as i64))?;
    Ok(finish(cartan.to_vec(), window, d, Some(wide)))
}

/// Zero-weight dimensions on the windows `[-n, n]` for each listed `n`.
pub fn zero_weight_growth(spec: &TriBracketSpec, cartan: &[(Element, Element)], bounds: &[u32]) -> Result<Vec<usize>, Error> {
    bounds.iter().map(|n| Ok(weight_decompose(spec, cartan, &Window::symmetric(*n))?.zero_weight_dim())).collect()
}

/// Eigenspaces of `p(0)` and `q(0)` acting naturally on `A`.
pub fn natural_module_decompose(window: &Window) -> Result<WeightDecomposition, Error> {
    let p0 = make_generator(&GeneratorId::omega(GeneratorTag::P(0)))?;
    let q0 = make_generator(&GeneratorId::omega(GeneratorTag::Q(0)))?;
    let run = |w: &Window| {
        let ops: [&Operator; 2] = [&p0, &q0];
        let maps: Vec<BasisMap<'_>> = ops.iter().map(|op| Box::new(move |b: Basis| op.apply_basis(b)) as BasisMap<'_>).collect();
        simultaneous_eigenspaces(w, &maps)
    };
    let d = run(window)?;
    let wide = run(&window.widen(window.len() as i64))?;
    Ok(finish(Vec::new(), window, d, Some(wide)))
}

/// The Cartan pairs used by default: `(L_0, M_0)` for Omega and
/// `(L_{-k}, M_t)` for every window index `t` under FK.
pub fn default_cartan(spec: &TriBracketSpec, window: &Window) -> Vec<(Element, Element)> {
    match spec {
        TriBracketSpec::Fk { k, .. } => window.indices().map(|t| (Element::l(-k), Element::m(t))).collect(),
        _ => vec![(Element::l(0), Element::m(0))],
    }
}

/// Weight decomposition of the regular representation with the expected
/// shape enforced: Omega spaces are `span{L_t, M_-t}` and Harish-Chandra,
/// FK is a weight module whose zero-weight space grows with the window.
pub fn weight_report(spec: &TriBracketSpec, window: &Window) -> Result<VerdictReport, Error> {
    let cartan = default_cartan(spec, window);
    let d = weight_decompose(spec, &cartan, window)?;
    let mut report = d.to_report("weight-decomposition", window);
    report.set_param("bracket", spec);
    if !d.is_weight_module {
        report.fail("not a weight module on the window");
    }
    match spec {
        TriBracketSpec::Omega => {
            for t in window.indices() {
                let expected = WindowSubspace::coordinate_span(*window, |b| b == Basis::l(t) || b == Basis::m(-t));
                let label = vec![Rational::from_integer((-t).into())];
                if d.spaces.get(&label) != Some(&expected) {
                    report.fail(format!("weight {} space is not span{{L[{t}], M[{}]}}", -t, -t));
                }
            }
            if d.spaces.len() != window.len() {
                report.fail(format!("{} weight spaces, expected {}", d.spaces.len(), window.len()));
            }
            if !d.is_harish_chandra_on_window {
                report.fail("weight spaces are not stable under widening");
            }
        }
        TriBracketSpec::Fk { .. } => {
            let n = window.bound().max(0) as u32;
            let growth = zero_weight_growth(spec, &default_cartan(spec, window), &[n, n + 1, n + 2])?;
            report.stat("zero_weight_growth", growth.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
            let linear = growth.windows(2).all(|p| p[1] > p[0]) && growth.windows(3).all(|p| p[2] - p[1] == p[1] - p[0]);
            if !linear {
                report.fail("zero-weight dimension does not grow linearly with the window");
            }
            if d.is_harish_chandra_on_window {
                report.fail("weight spaces unexpectedly stable under widening");
            }
        }
        _ => {}
    }
    Ok(report)
}

pub fn natural_module_report(window: &Window) -> Result<VerdictReport, Error> {
    let d = natural_module_decompose(window)?;
    let mut report = d.to_report("natural-module", window);
    report.set_param("cartan", "p(0), q(0)");
    if !d.is_intermediate_series_on_window {
        report.fail(format!("largest eigenspace has dimension {}", d.max_dim()));
    }
    if d.spaces.len() != window.dim() {
        report.fail(format!("{} eigenspaces for {} basis vectors", d.spaces.len(), window.dim()));
    }
    Ok(report)
}

impl fmt::Display for WeightDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (w, s) in &self.spaces {
            writeln!(f, "{} : {s}", format_label(w))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Family, FunctionalSpec};
    use crate::rational::int;

    #[test]
    fn omega_regular_module() {
        let w = Window::symmetric(4);
        let d = weight_decompose(&TriBracketSpec::Omega, &[(Element::l(0), Element::m(0))], &w).unwrap();
        assert_eq!(d.spaces.len(), 9);
        for t in -4..=4 {
            let expected = WindowSubspace::from_elements(w, &[Element::l(t), Element::m(-t)]).unwrap();
            assert_eq!(d.spaces[&vec![int(-t)]], expected);
        }
        assert!(d.is_harish_chandra_on_window && !d.is_intermediate_series_on_window);
    }

    #[test]
    fn fk_zero_weight_grows() {
        let spec = TriBracketSpec::fk(1, FunctionalSpec::default());
        let cartan: Vec<(Element, Element)> = (-2..=2).map(|t| (Element::l(-1), Element::m(t))).collect();
        let d = weight_decompose(&spec, &cartan, &Window::symmetric(3)).unwrap();
        assert!(d.is_weight_module && !d.is_harish_chandra_on_window);
        let zero = WindowSubspace::coordinate_span(Window::symmetric(3), |b| b.family == Family::M || b == Basis::l(-1));
        assert_eq!(d.spaces[&vec![int(0); 5]], zero);
        assert_eq!(zero_weight_growth(&spec, &cartan, &[2, 3, 4]).unwrap(), vec![6, 8, 10]);
    }

    #[test]
    fn natural_module() {
        let d = natural_module_decompose(&Window::symmetric(4)).unwrap();
        assert_eq!(d.spaces.len(), 18);
        assert!(d.is_intermediate_series_on_window);
        assert_eq!(d.spaces[&vec![int(0), int(-1)]], WindowSubspace::from_elements(Window::symmetric(4), &[Element::l(0)]).unwrap());
        assert_eq!(d.spaces[&vec![int(0), int(1)]], WindowSubspace::from_elements(Window::symmetric(4), &[Element::m(0)]).unwrap());
        assert!(natural_module_decompose(&Window::empty()).unwrap().spaces.is_empty());
    }

    #[test]
    fn empty_cartan() {
        let w = Window::symmetric(1);
        let d = weight_decompose(&TriBracketSpec::Omega, &[], &w).unwrap();
        assert_eq!(d.spaces.len(), 1);
        assert_eq!(d.spaces[&Vec::new()], WindowSubspace::full(w));
    }
}
