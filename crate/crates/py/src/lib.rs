//! Python bindings for the restricted-induction toolkit: groups, exact
//! character tables, the spanning-hypothesis decision procedure, induction
//! identities, field-counting invariants, Frobenius statistics, and the
//! zero-free-region calculator.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use restind_core::bitset::BitSet;
use restind_core::chartab::{character_table, CharacterTable};
use restind_core::cyclo::rational_to_string;
use restind_core::lattice::subgroups_up_to_conjugacy;
use restind_core::malle::{a_pi, m_of_g, m_reg, PermAction};
use restind_core::numpoly::MonicIntPolynomial;
use restind_core::perm::{Perm, PermGroup};
use restind_core::restind::{
    artin_span_rank, brauer_decomposition, check_hypothesis_t, TOptions, Verdict,
};
use restind_core::smallgroups::by_name;
use restind_core::tally::{chebotarev_tally, fibered_check};
use restind_core::zfr::{eta_k, omega_k, RegionParams};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite permutation group with its exact character table.
#[pyclass(name = "Group")]
struct PyGroup {
    group: PermGroup,
    table: CharacterTable,
}

fn resolve_n(g: &PermGroup, spec: &str) -> PyResult<BitSet> {
    match spec {
        "G" => {
            let mut b = BitSet::new(g.order());
            for i in 0..g.order() {
                b.insert(i);
            }
            Ok(b)
        }
        "A" => {
            let mut b = BitSet::new(g.order());
            for (i, e) in g.elements.iter().enumerate() {
                if (g.degree - e.orbit_count()) % 2 == 0 {
                    b.insert(i);
                }
            }
            if b.count() == g.order() {
                return Err(err("the group contains no odd permutation"));
            }
            Ok(b)
        }
        "minimal" => {
            let m = g.minimal_normal_subgroups();
            if m.len() != 1 {
                return Err(err(format!("{} minimal normal subgroups, not unique", m.len())));
            }
            Ok(m[0].clone())
        }
        other => {
            let order: usize = other.parse().map_err(|_| {
                err("expected A, G, minimal, or the order of a unique normal subgroup")
            })?;
            let matches: Vec<BitSet> = g
                .normal_subgroups()
                .into_iter()
                .filter(|s| s.count() == order)
                .collect();
            if matches.len() != 1 {
                return Err(err(format!(
                    "{} normal subgroups of order {order}",
                    matches.len()
                )));
            }
            Ok(matches[0].clone())
        }
    }
}

#[pymethods]
impl PyGroup {
    /// Group("S5") or Group("(1,2),(1,2,3,4,5)", degree=5).
    #[new]
    #[pyo3(signature = (spec, degree=None, cap=20_000))]
    fn new(spec: &str, degree: Option<usize>, cap: usize) -> PyResult<Self> {
        let group = if spec.trim_start().starts_with('(') {
            let d = degree.ok_or_else(|| err("degree is required with raw generators"))?;
            let mut gens = Vec::new();
            let mut rest = spec.trim();
            while !rest.is_empty() {
                let end = rest.find("),(").map(|i| i + 1).unwrap_or(rest.len());
                let (head, tail) = rest.split_at(end);
                gens.push(Perm::parse(head.trim(), d).map_err(err)?);
                rest = tail.trim_start_matches(',').trim();
            }
            PermGroup::generate(d, gens, cap).map_err(err)?
        } else {
            by_name(spec, cap).map_err(err)?
        };
        let table = character_table(&group);
        Ok(PyGroup { group, table })
    }

    #[getter]
    fn order(&self) -> usize {
        self.group.order()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.group.degree
    }

    #[getter]
    fn num_classes(&self) -> usize {
        self.table.num_classes()
    }

    #[getter]
    fn irreducible_degrees(&self) -> Vec<usize> {
        self.table.degrees.clone()
    }

    #[getter]
    fn class_sizes(&self) -> Vec<usize> {
        self.table.class_sizes.clone()
    }

    fn is_transitive(&self) -> bool {
        self.group.is_transitive()
    }

    /// Orders of all normal subgroups, ascending with multiplicity.
    fn normal_subgroup_orders(&self) -> Vec<usize> {
        let mut v: Vec<usize> =
            self.group.normal_subgroups().iter().map(|s| s.count()).collect();
        v.sort_unstable();
        v
    }

    fn minimal_normal_orders(&self) -> Vec<usize> {
        self.group
            .minimal_normal_subgroups()
            .iter()
            .map(|s| s.count())
            .collect()
    }

    /// Decide the restricted-induction spanning hypothesis for N given by
    /// spec ("A", "G", "minimal", or an order). Returns the verdict string.
    #[pyo3(signature = (n, shortcuts=true, lattice_budget=200_000))]
    fn check_t(&self, n: &str, shortcuts: bool, lattice_budget: usize) -> PyResult<String> {
        let n_set = resolve_n(&self.group, n)?;
        let lattice = subgroups_up_to_conjugacy(&self.group, lattice_budget);
        let d = check_hypothesis_t(
            &self.group,
            &self.table,
            &n_set,
            &lattice,
            TOptions { allow_shortcuts: shortcuts, galois_merge: true },
        )
        .map_err(err)?;
        Ok(match d.verdict {
            Verdict::Holds => "HOLDS",
            Verdict::HoldsByTheorem => "HOLDS_BY_THEOREM",
            Verdict::UndecidedPartialLattice => "UNDECIDED_PARTIAL_LATTICE",
            Verdict::Fails => "FAILS",
        }
        .to_string())
    }

    /// (rank, target_rank) of nontrivial cyclic-character inductions over
    /// the augmentation ideal.
    fn artin_span(&self) -> (usize, usize) {
        artin_span_rank(&self.group, &self.table)
    }

    /// Positive cyclic-induction expansion of Reg − 1: list of
    /// (cyclic_order, char_exponent, coefficient "p/q").
    fn brauer(&self) -> PyResult<Vec<(usize, usize, String)>> {
        if self.group.order() < 2 {
            return Err(err("the group must be nontrivial"));
        }
        Ok(brauer_decomposition(&self.group)
            .iter()
            .map(|w| (w.cyclic_order, w.char_exponent, rational_to_string(&w.coefficient)))
            .collect())
    }

    /// Minimal index drop of the natural action.
    fn a_natural(&self) -> PyResult<usize> {
        let act = PermAction::natural(&self.group).map_err(err)?;
        a_pi(&act).map_err(err)
    }

    /// m(G) for the regular action, as a "p/q" string.
    fn m(&self) -> String {
        rational_to_string(&m_of_g(&self.group))
    }

    /// m_reg(G, N) as a "p/q" string.
    fn m_regular(&self, n: &str) -> PyResult<String> {
        let n_set = resolve_n(&self.group, n)?;
        Ok(rational_to_string(&m_reg(&self.group, &n_set).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!(
            "Group(degree={}, order={}, classes={})",
            self.group.degree,
            self.group.order(),
            self.table.num_classes()
        )
    }
}

/// Frobenius cycle-type statistics for a monic integer polynomial over
/// primes up to x. Returns a dict.
#[pyfunction]
#[pyo3(signature = (poly, x, sieve_cap=2_000_000_000))]
fn chebotarev(py: Python<'_>, poly: &str, x: u64, sieve_cap: u64) -> PyResult<PyObject> {
    let f = MonicIntPolynomial::parse(poly).map_err(err)?;
    let tally = chebotarev_tally(&f, x, sieve_cap).map_err(err)?;
    let fr = fibered_check(&tally);
    let dict = pyo3::types::PyDict::new_bound(py);
    dict.set_item("discriminant", tally.disc.to_string())?;
    dict.set_item("pi_x", tally.pi_x)?;
    dict.set_item("ramified", tally.ramified.clone())?;
    dict.set_item("parity_identity_holds", fr.parity_identity_holds)?;
    let rows: Vec<(Vec<usize>, u64, String)> = fr
        .rows
        .iter()
        .map(|r| (r.cycle_type.clone(), r.observed, rational_to_string(&r.predicted)))
        .collect();
    dict.set_item("rows", rows)?;
    Ok(dict.into())
}

/// η_K(x): returns (grid_value, closed_form_value).
#[pyfunction]
fn eta(log_d: f64, epsilon: f64, order_g: u64, deg_k: u64, x: f64) -> PyResult<(f64, f64)> {
    let p = RegionParams::new(log_d, epsilon, order_g, deg_k).map_err(err)?;
    let r = eta_k(x, &p).map_err(err)?;
    Ok((r.grid_value, r.closed_form_value))
}

/// ω_K(t): zero-free-region width at height t.
#[pyfunction]
fn omega(log_d: f64, epsilon: f64, order_g: u64, deg_k: u64, t: f64) -> PyResult<f64> {
    let p = RegionParams::new(log_d, epsilon, order_g, deg_k).map_err(err)?;
    omega_k(t, &p).map_err(err)
}

#[pymodule]
fn restind_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(chebotarev, m)?)?;
    m.add_function(wrap_pyfunction!(eta, m)?)?;
    m.add_function(wrap_pyfunction!(omega, m)?)?;
    Ok(())
}
