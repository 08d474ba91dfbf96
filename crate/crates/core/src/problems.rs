//! Problem instance generation and interchange: planted-satisfiable and
//! random-unsatisfiable 3-SAT, maximum-independent-set objectives, and
//! DIMACS CNF with a JSON metadata sidecar.
//!
//! Generation is bit-reproducible: all randomness comes from one ChaCha8
//! stream seeded with the spec's 64-bit seed, consumed in a documented order
//! (planted assignment first when applicable, then per clause its variable
//! triple followed by its sign pattern). Bounded draws use masked rejection
//! on `next_u64`: draw, keep the low bits of the smallest power of two
//! covering the bound, reject and redraw on overflow.

use std::collections::BTreeSet;

use rand::RngCore;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::diagonal::{for_each_in_coset, satisfied_counts, Clause3, DiagonalObjective, SatInstance};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::state::MAX_QUBITS;

/// Whole-instance resamples before random-unsat generation gives up.
pub const UNSAT_ATTEMPT_BUDGET: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorMode {
    Planted,
    RandomUnsat,
}

/// What to generate: `m` clauses over `n` variables, planted or rejected
/// until unsatisfiable, from the given seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub n: usize,
    pub m: usize,
    pub mode: GeneratorMode,
    pub seed: u64,
}

/// Sidecar metadata serialized next to a generated DIMACS file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceMetadata {
    pub n: usize,
    pub m: usize,
    pub mode: GeneratorMode,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub planted: Option<u64>,
}

/// Undirected graph on `n` vertices; unordered distinct pairs, no self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCount { n, max: MAX_QUBITS });
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::domain(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::domain(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MisVariant {
    /// Vertex count only: `C(z) = sum_j z_j`.
    Standard,
    /// Vertex count minus selected edges, each unordered pair counted once.
    Plus,
}

/// Uniform integer in `[0, bound)` by masked rejection sampling.
fn sample_below(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    debug_assert!(bound >= 1);
    let mask = bound.next_power_of_two() - 1;
    loop {
        let v = rng.next_u64() & mask;
        if v < bound {
            return v;
        }
    }
}

/// Three distinct variable indices; the whole triple is redrawn until
/// distinct.
fn sample_triple(rng: &mut ChaCha8Rng, n: usize) -> [usize; 3] {
    loop {
        let a = sample_below(rng, n as u64) as usize;
        let b = sample_below(rng, n as u64) as usize;
        let c = sample_below(rng, n as u64) as usize;
        if a != b && a != c && b != c {
            return [a, b, c];
        }
    }
}

fn check_generator_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::domain(format!(
            "3-SAT generation needs n >= 3, got {n}"
        )));
    }
    if n > MAX_QUBITS {
        return Err(Error::QubitCount { n, max: MAX_QUBITS });
    }
    Ok(())
}

/// Draw a planted assignment uniformly, then `m` clauses that the planted
/// assignment satisfies: per clause a random distinct variable triple and a
/// sign pattern uniform over the 7 (of 8) patterns the assignment satisfies.
pub fn generate_planted_sat(spec: &GeneratorSpec) -> Result<(SatInstance, u64)> {
    check_generator_n(spec.n)?;
    if spec.mode != GeneratorMode::Planted {
        return Err(Error::domain("generator spec mode is not planted"));
    }
    if spec.m < 1 {
        return Err(Error::domain("m must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let planted = sample_below(&mut rng, 1u64 << spec.n);
    let mut clauses = Vec::with_capacity(spec.m);
    for _ in 0..spec.m {
        let vars = sample_triple(&mut rng, spec.n);
        // The one sign pattern the planted assignment violates has every
        // literal false there: sign bit k = complement of the planted bit.
        let mut violated = 0u64;
        for (k, &v) in vars.iter().enumerate() {
            violated |= (1 - (planted >> v & 1)) << k;
        }
        let draw = sample_below(&mut rng, 7);
        let pattern = if draw < violated { draw } else { draw + 1 };
        let signs = [pattern & 1 == 1, pattern >> 1 & 1 == 1, pattern >> 2 & 1 == 1];
        clauses.push(Clause3::new(vars, signs).expect("triple is distinct"));
    }
    Ok((SatInstance::new(spec.n, clauses)?, planted))
}

/// Draw fully random instances (uniform triples, uniform sign patterns over
/// all 8) and reject each whole instance that turns out satisfiable, verified
/// by an exhaustive scan of the satisfied-count diagonal.
pub fn generate_random_unsat(spec: &GeneratorSpec) -> Result<SatInstance> {
    check_generator_n(spec.n)?;
    if spec.mode != GeneratorMode::RandomUnsat {
        return Err(Error::domain("generator spec mode is not random-unsat"));
    }
    if spec.m < 1 {
        return Err(Error::domain("m must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..UNSAT_ATTEMPT_BUDGET {
        let mut clauses = Vec::with_capacity(spec.m);
        for _ in 0..spec.m {
            let vars = sample_triple(&mut rng, spec.n);
            let pattern = sample_below(&mut rng, 8);
            let signs = [pattern & 1 == 1, pattern >> 1 & 1 == 1, pattern >> 2 & 1 == 1];
            clauses.push(Clause3::new(vars, signs).expect("triple is distinct"));
        }
        let instance = SatInstance::new(spec.n, clauses)?;
        let max_satisfied = satisfied_counts(&instance).into_iter().max().unwrap();
        if (max_satisfied as usize) < spec.m {
            return Ok(instance);
        }
    }
    Err(Error::Generation {
        attempts: UNSAT_ATTEMPT_BUDGET,
    })
}

/// Independent-set objectives: vertex count, optionally penalized by the
/// number of edges inside the selection.
pub fn mis_diagonal<T: Scalar>(graph: &Graph, variant: MisVariant) -> DiagonalObjective<T> {
    let n = graph.n();
    let mut values: Vec<i32> = (0..1u64 << n).map(|z| z.count_ones() as i32).collect();
    if variant == MisVariant::Plus {
        for &(u, v) in graph.edges() {
            let mask = (1u64 << u) | (1u64 << v);
            for_each_in_coset(n, mask, mask, |z| values[z] -= 1);
        }
    }
    DiagonalObjective::new(
        n,
        values
            .into_iter()
            .map(|v| T::from_i32(v).unwrap())
            .collect(),
    )
    .expect("dimensions are valid by construction")
}

/// Parse DIMACS CNF with exactly three literals per clause. DIMACS variable
/// `v` maps to qubit `v - 1`; a positive literal is satisfied when the bit
/// is 1. Clauses may span lines; comment lines start with `c`.
pub fn parse_dimacs(text: &str) -> Result<SatInstance> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Clause3> = Vec::new();
    let mut literals: Vec<i64> = Vec::new();
    let mut clause_start_line = 0usize;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(line_no, "duplicate header"));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(Error::parse(line_no, format!("malformed header '{line}'")));
            }
            let n: usize = fields[2]
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad variable count '{}'", fields[2])))?;
            let m: usize = fields[3]
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad clause count '{}'", fields[3])))?;
            header = Some((n, m));
            continue;
        }
        let (n, _) = header.ok_or_else(|| Error::parse(line_no, "clause before 'p cnf' header"))?;
        for token in line.split_whitespace() {
            let lit: i64 = token
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad literal '{token}'")))?;
            if lit == 0 {
                if literals.len() != 3 {
                    return Err(Error::parse(
                        line_no,
                        format!("clause has {} literals, expected 3", literals.len()),
                    ));
                }
                clauses.push(clause_from_literals(&literals, n, clause_start_line)?);
                literals.clear();
            } else {
                if literals.is_empty() {
                    clause_start_line = line_no;
                }
                literals.push(lit);
            }
        }
    }

    let (n, m) = header.ok_or_else(|| Error::parse(text.lines().count(), "missing 'p cnf' header"))?;
    if !literals.is_empty() {
        return Err(Error::parse(
            clause_start_line,
            "unterminated clause at end of input",
        ));
    }
    if clauses.len() != m {
        return Err(Error::parse(
            text.lines().count(),
            format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    SatInstance::new(n, clauses)
}

fn clause_from_literals(literals: &[i64], n: usize, line: usize) -> Result<Clause3> {
    let mut vars = [0usize; 3];
    let mut signs = [false; 3];
    for (k, &lit) in literals.iter().enumerate() {
        let var = lit.unsigned_abs() as usize;
        if var == 0 || var > n {
            return Err(Error::parse(
                line,
                format!("variable {var} out of range 1..={n}"),
            ));
        }
        vars[k] = var - 1;
        signs[k] = lit > 0;
    }
    Clause3::new(vars, signs)
        .map_err(|_| Error::parse(line, format!("repeated variable in clause {literals:?}")))
}

/// Render an instance in DIMACS CNF; `parse_dimacs(emit_dimacs(i)) == i` with
/// clause order preserved.
pub fn emit_dimacs(instance: &SatInstance) -> String {
    let mut out = String::new();
    out.push_str(&format!("p cnf {} {}\n", instance.n(), instance.m()));
    for clause in instance.clauses() {
        let mut lits = Vec::with_capacity(3);
        for (&v, &s) in clause.vars().iter().zip(clause.signs().iter()) {
            let lit = (v + 1) as i64;
            lits.push(if s { lit } else { -lit });
        }
        out.push_str(&format!("{} {} {} 0\n", lits[0], lits[1], lits[2]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonal::build_sat_diagonal;
    use crate::oracle::clause_count_check;

    fn planted_spec(n: usize, m: usize, seed: u64) -> GeneratorSpec {
        GeneratorSpec {
            n,
            m,
            mode: GeneratorMode::Planted,
            seed,
        }
    }

    #[test]
    fn planted_assignment_satisfies_every_clause() {
        let (instance, planted) = generate_planted_sat(&planted_spec(10, 200, 42)).unwrap();
        assert_eq!(clause_count_check(&instance, planted), 200);
        let diag = build_sat_diagonal::<f64>(&instance);
        assert_eq!(diag.values()[planted as usize], 200.0);
    }

    #[test]
    fn planted_generation_is_deterministic() {
        let a = generate_planted_sat(&planted_spec(8, 50, 7)).unwrap();
        let b = generate_planted_sat(&planted_spec(8, 50, 7)).unwrap();
        assert_eq!(a, b);
        let c = generate_planted_sat(&planted_spec(8, 50, 8)).unwrap();
        assert_ne!(a.0, c.0);
    }

    #[test]
    fn planted_rejects_tiny_n() {
        assert!(generate_planted_sat(&planted_spec(2, 5, 1)).is_err());
    }

    #[test]
    fn random_unsat_is_unsatisfiable() {
        let spec = GeneratorSpec {
            n: 6,
            m: 120,
            mode: GeneratorMode::RandomUnsat,
            seed: 11,
        };
        let instance = generate_random_unsat(&spec).unwrap();
        let diag = build_sat_diagonal::<f64>(&instance);
        let max = diag.values().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(max < 120.0);
    }

    #[test]
    fn random_unsat_exhausts_budget_when_m_too_small() {
        // A single 3-literal clause is always satisfiable.
        let spec = GeneratorSpec {
            n: 3,
            m: 1,
            mode: GeneratorMode::RandomUnsat,
            seed: 1,
        };
        assert!(matches!(
            generate_random_unsat(&spec),
            Err(Error::Generation { .. })
        ));
    }

    #[test]
    fn sample_below_is_in_range_and_reproducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for bound in [1u64, 2, 3, 7, 8, 1000] {
            for _ in 0..200 {
                assert!(sample_below(&mut rng, bound) < bound);
            }
        }
        let mut a = ChaCha8Rng::seed_from_u64(5);
        let mut b = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            assert_eq!(sample_below(&mut a, 7), sample_below(&mut b, 7));
        }
    }

    #[test]
    fn mis_standard_counts_vertices() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let diag = mis_diagonal::<f64>(&g, MisVariant::Standard);
        assert_eq!(diag.values()[0], 0.0);
        assert_eq!(diag.values()[0b0100], 1.0);
        assert_eq!(diag.values()[0b1111], 4.0);
    }

    #[test]
    fn mis_plus_on_triangle() {
        let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let diag = mis_diagonal::<f64>(&g, MisVariant::Plus);
        assert_eq!(diag.values()[0], 0.0);
        assert_eq!(diag.values()[0b001], 1.0);
        assert_eq!(diag.values()[0b111], 0.0); // 3 vertices - 3 edges
        assert_eq!(diag.values()[0b110], 1.0); // 2 vertices - 1 edge
    }

    #[test]
    fn graph_rejects_self_loop_and_range() {
        assert!(Graph::new(3, [(1, 1)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn graph_deduplicates_unordered_pairs() {
        let g = Graph::new(3, [(1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn parse_single_clause() {
        let inst = parse_dimacs("p cnf 3 1\n1 2 3 0\n").unwrap();
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.m(), 1);
        assert_eq!(inst.clauses()[0].vars(), [0, 1, 2]);
        assert_eq!(inst.clauses()[0].signs(), [true, true, true]);
    }

    #[test]
    fn parse_handles_comments_and_multiline_clauses() {
        let inst = parse_dimacs("c header comment\np cnf 4 2\n-1 2\n-3 0\n2 -3 4 0\n").unwrap();
        assert_eq!(inst.m(), 2);
        assert_eq!(inst.clauses()[0].vars(), [0, 1, 2]);
        assert_eq!(inst.clauses()[0].signs(), [false, true, false]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_dimacs("p cnf 3 1\n1 1 2 0\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }

        let err = parse_dimacs("p cnf 3 1\n1 2 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));

        let err = parse_dimacs("p cnf 2 1\n1 2 3 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));

        let err = parse_dimacs("1 2 3 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn parse_detects_clause_count_mismatch() {
        assert!(parse_dimacs("p cnf 3 2\n1 2 3 0\n").is_err());
        assert!(parse_dimacs("p cnf 3 1\n1 2 3 0\n-1 2 3 0\n").is_err());
    }

    #[test]
    fn dimacs_roundtrip_preserves_instance() {
        let (instance, _) = generate_planted_sat(&planted_spec(9, 40, 3)).unwrap();
        let text = emit_dimacs(&instance);
        let parsed = parse_dimacs(&text).unwrap();
        assert_eq!(parsed, instance);
    }

    #[test]
    fn metadata_roundtrips_through_json() {
        let meta = InstanceMetadata {
            n: 20,
            m: 2280,
            mode: GeneratorMode::Planted,
            seed: 17,
            planted: Some(314159),
        };
        let json = serde_json::to_string(&meta).unwrap();
        assert!(json.contains("\"planted\""));
        let back: InstanceMetadata = serde_json::from_str(&json).unwrap();
        assert_eq!(back, meta);

        let unsat = InstanceMetadata {
            n: 20,
            m: 4560,
            mode: GeneratorMode::RandomUnsat,
            seed: 17,
            planted: None,
        };
        let json = serde_json::to_string(&unsat).unwrap();
        assert!(json.contains("random-unsat"));
        assert!(!json.contains("planted"));
    }

    #[test]
    fn sign_patterns_cover_all_seven_allowed() {
        // With a fixed variable triple (n = 3) every allowed pattern should
        // appear reasonably often.
        let (instance, planted) = generate_planted_sat(&planted_spec(3, 2000, 123)).unwrap();
        let mut seen = [0usize; 8];
        for clause in instance.clauses() {
            let mut pattern = 0usize;
            for (k, (&v, &s)) in clause.vars().iter().zip(clause.signs().iter()).enumerate() {
                // Canonicalize by variable id: bit v set iff literal of v positive.
                let _ = k;
                if s {
                    pattern |= 1 << v;
                }
            }
            seen[pattern] += 1;
        }
        let forbidden = (!planted & 0b111) as usize;
        assert_eq!(seen[forbidden], 0);
        for (pattern, &count) in seen.iter().enumerate() {
            if pattern != forbidden {
                assert!(count > 200, "pattern {pattern} appeared only {count} times");
            }
        }
    }
}
