use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::factors::LinearFactorProduct;
use super::modp;
use super::rational::{generating_denominator, RationalComponent};
use crate::combinatorics::{
    shard_prefixes, staircase, ChoiceTree, GrowthTree, ParamBundle, Permutation, SwapTree, Walk,
};
use crate::error::{invalid, Error, Result};

/// Largest order for which the enumerations are run.
pub const MAX_N: usize = 6;

/// Which family a generating function sums over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Standard tableaux of staircase shape: `F_n`.
    Tableaux,
    /// Sorting networks: `G_n`.
    Networks,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::Tableaux => "F",
            Side::Networks => "G",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn check_order(n: usize) -> Result<()> {
    if n < 2 {
        return invalid(format!("order must be at least 2, got {n}"));
    }
    if n > MAX_N {
        return Err(Error::Resource(format!("order {n} exceeds the enumeration limit {MAX_N}")));
    }
    Ok(())
}

/// Folds every parameter bundle of one family in parallel. Shards are
/// merged with `merge`, which must be associative and commutative for the
/// result to be independent of scheduling.
pub fn fold_bundles<A, I, F, M>(n: usize, side: Side, init: I, fold: F, merge: M) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, ParamBundle) -> Result<()> + Sync,
    M: Fn(A, A) -> A + Sync,
{
    check_order(n)?;
    match side {
        Side::Tableaux => {
            let tree = GrowthTree::new(staircase(n)?);
            fold_tree(tree, |c| ParamBundle::from_growth_chain(n, c), init, fold, merge)
        }
        Side::Networks => {
            let tree = SwapTree::new(n)?;
            fold_tree(tree, |c| ParamBundle::from_swap_chain(n, c), init, fold, merge)
        }
    }
}

fn fold_tree<T, B, A, I, F, M>(tree: T, bundle: B, init: I, fold: F, merge: M) -> Result<A>
where
    T: ChoiceTree + Clone + Send + Sync,
    B: Fn(&crate::combinatorics::Chain) -> ParamBundle + Sync,
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, ParamBundle) -> Result<()> + Sync,
    M: Fn(A, A) -> A + Sync,
{
    let prefixes = shard_prefixes(tree.clone(), 5)?;
    prefixes
        .par_iter()
        .map(|prefix| {
            let mut acc = init();
            for chain in Walk::with_prefix(tree.clone(), prefix)? {
                fold(&mut acc, bundle(&chain))?;
            }
            Ok(acc)
        })
        .try_reduce(&init, |a, b| Ok(merge(a, b)))
}

/// Distinct denominators per order permutation, with object counts.
pub type Buckets = BTreeMap<Permutation, HashMap<LinearFactorProduct, u64>>;

/// Groups the generating factors of one family by order permutation.
/// Every out-degree is checked to lie in `1..=n-1`.
pub fn collect_buckets(n: usize, side: Side) -> Result<Buckets> {
    fold_bundles(
        n,
        side,
        Buckets::new,
        |acc, b| {
            if let Some(&d) = b.degs.iter().find(|&&d| d == 0 || d >= n) {
                return invalid(format!("out-degree {d} outside 1..={}", n - 1));
            }
            let den = generating_denominator(&b);
            *acc.entry(b.order).or_default().entry(den).or_insert(0) += 1;
            Ok(())
        },
        |mut a, b| {
            for (perm, dens) in b {
                let slot = a.entry(perm).or_default();
                for (d, c) in dens {
                    *slot.entry(d).or_insert(0) += c;
                }
            }
            a
        },
    )
}

/// Number of objects per order permutation.
pub fn bucket_counts(n: usize, side: Side) -> Result<BTreeMap<Permutation, u64>> {
    Ok(collect_buckets(n, side)?
        .into_iter()
        .map(|(p, dens)| (p, dens.values().sum()))
        .collect())
}

/// `F_n` or `G_n`: one reduced rational component per permutation of
/// `{1..n-1}`, zero where no object has that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingFunctionVector {
    n: usize,
    components: BTreeMap<Permutation, RationalComponent>,
}

impl GeneratingFunctionVector {
    /// Fills in zero components for permutations that are absent.
    pub fn new(n: usize, mut components: BTreeMap<Permutation, RationalComponent>) -> Result<Self> {
        if n < 2 {
            return invalid("order must be at least 2");
        }
        for (p, c) in &components {
            if p.len() != n - 1 || c.nvars() != n - 1 {
                return invalid(format!("component {p} does not belong to order {n}"));
            }
        }
        for p in Permutation::all(n - 1) {
            components.entry(p).or_insert_with(|| RationalComponent::zero(n - 1));
        }
        Ok(Self { n, components })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, p: &Permutation) -> Option<&RationalComponent> {
        self.components.get(p)
    }

    pub fn component_mut(&mut self, p: &Permutation) -> Option<&mut RationalComponent> {
        self.components.get_mut(p)
    }

    /// Components in lexicographic order of the permutations.
    pub fn components(&self) -> impl Iterator<Item = (&Permutation, &RationalComponent)> {
        self.components.iter()
    }

    /// Component residues at `point`, in the order of [`components`](Self::components).
    pub fn eval_mod_p(&self, point: &[u64], prime: u64) -> Result<Vec<u64>> {
        if point.len() != self.n - 1 {
            return invalid(format!("point must have {} coordinates", self.n - 1));
        }
        self.components.values().map(|c| c.eval_mod(point, prime)).collect()
    }

    pub fn eval_f64(&self, point: &[f64]) -> Vec<f64> {
        self.components.values().map(|c| c.eval_f64(point)).collect()
    }
}

/// A component where two vectors differ, with a point separating them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub permutation: Permutation,
    pub point: Vec<u64>,
    pub prime: u64,
    pub left: u64,
    pub right: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub equal: bool,
    pub witness: Option<Witness>,
}

/// Exact component-wise comparison. On a mismatch the first differing
/// permutation is returned together with a point where the two values
/// differ modulo `2^61 - 1`.
pub fn equal(a: &GeneratingFunctionVector, b: &GeneratingFunctionVector) -> Result<Comparison> {
    if a.n != b.n {
        return invalid(format!("orders differ: {} and {}", a.n, b.n));
    }
    let mismatch = a
        .components
        .par_iter()
        .find_first(|(p, ca)| !ca.same_function(&b.components[*p]))
        .map(|(p, _)| p.clone());
    let Some(permutation) = mismatch else {
        return Ok(Comparison { equal: true, witness: None });
    };
    let (ca, cb) = (&a.components[&permutation], &b.components[&permutation]);
    let prime = modp::MERSENNE_61;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut witness = None;
    for _ in 0..256 {
        let point: Vec<u64> = (0..a.n - 1).map(|_| rng.gen_range(0..prime)).collect();
        let (Ok(left), Ok(right)) = (ca.eval_mod(&point, prime), cb.eval_mod(&point, prime)) else {
            continue;
        };
        if left != right {
            witness = Some(Witness { permutation, point, prime, left, right });
            break;
        }
    }
    Ok(Comparison { equal: false, witness })
}

/// Progress notifications from [`build`].
#[derive(Debug, Clone)]
pub enum BuildEvent<'a> {
    Enumerated { objects: u64, buckets: usize },
    Bucket {
        permutation: &'a Permutation,
        objects: u64,
        distinct_denominators: usize,
        resumed: bool,
        done: usize,
        total: usize,
    },
}

#[derive(Default, Clone, Copy)]
pub struct BuildOptions<'a> {
    /// Directory holding one file per finished bucket; existing files are
    /// reused, so an interrupted build resumes where it stopped.
    pub checkpoint_dir: Option<&'a Path>,
    pub progress: Option<&'a (dyn Fn(&BuildEvent<'_>) + Sync)>,
}

#[derive(Serialize, Deserialize)]
struct BucketCheckpoint {
    n: usize,
    side: Side,
    permutation: Permutation,
    objects: u64,
    component: RationalComponent,
}

fn checkpoint_path(dir: &Path, n: usize, side: Side, p: &Permutation) -> PathBuf {
    let name: Vec<String> = p.one_line().iter().map(|v| v.to_string()).collect();
    dir.join(format!("{}-n{n}", side.label())).join(format!("{}.json", name.join("_")))
}

fn load_checkpoint(path: &Path, n: usize, side: Side, p: &Permutation, objects: u64) -> Result<Option<RationalComponent>> {
    let Ok(text) = fs::read_to_string(path) else {
        return Ok(None);
    };
    let ck: BucketCheckpoint = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    if ck.n != n || ck.side != side || &ck.permutation != p || ck.objects != objects {
        return invalid(format!("{} does not match the current enumeration", path.display()));
    }
    Ok(Some(ck.component))
}

fn store_checkpoint(path: &Path, ck: &BucketCheckpoint) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_vec(ck)?)?;
    fs::rename(tmp, path)?;
    Ok(())
}

/// Exact `F_n` or `G_n`, each component summed over its lcm denominator and
/// reduced.
pub fn build(n: usize, side: Side, opts: BuildOptions<'_>) -> Result<GeneratingFunctionVector> {
    let buckets = collect_buckets(n, side)?;
    let total_objects: u64 = buckets.values().flat_map(|d| d.values()).sum();
    if let Some(progress) = opts.progress {
        progress(&BuildEvent::Enumerated { objects: total_objects, buckets: buckets.len() });
    }
    let nvars = n - 1;
    let done = AtomicUsize::new(0);
    let total = buckets.len();
    let components = buckets
        .par_iter()
        .map(|(perm, dens)| {
            let objects: u64 = dens.values().sum();
            let path = opts.checkpoint_dir.map(|d| checkpoint_path(d, n, side, perm));
            let cached = match &path {
                Some(p) => load_checkpoint(p, n, side, perm, objects)?,
                None => None,
            };
            let resumed = cached.is_some();
            let component = match cached {
                Some(c) => c,
                None => {
                    // sorted so the summation order does not depend on hashing
                    let mut terms: Vec<(&LinearFactorProduct, u64)> = dens.iter().map(|(d, &c)| (d, c)).collect();
                    terms.sort_unstable();
                    let c = RationalComponent::sum_reciprocals(nvars, terms.iter().copied()).reduce();
                    if let Some(p) = &path {
                        store_checkpoint(
                            p,
                            &BucketCheckpoint { n, side, permutation: perm.clone(), objects, component: c.clone() },
                        )?;
                    }
                    c
                }
            };
            let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
            if let Some(progress) = opts.progress {
                progress(&BuildEvent::Bucket {
                    permutation: perm,
                    objects,
                    distinct_denominators: dens.len(),
                    resumed,
                    done: finished,
                    total,
                });
            }
            Ok((perm.clone(), component))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    GeneratingFunctionVector::new(n, components)
}

pub fn build_f(n: usize) -> Result<GeneratingFunctionVector> {
    build(n, Side::Tableaux, BuildOptions::default())
}

pub fn build_g(n: usize) -> Result<GeneratingFunctionVector> {
    build(n, Side::Networks, BuildOptions::default())
}

/// Component residues of `F_n` or `G_n` at several points, accumulated
/// object by object without forming any polynomial. Indexed
/// `[point][permutation]` with permutations in lexicographic order.
pub fn stream_eval_mod_p(n: usize, side: Side, points: &[Vec<u64>], prime: u64) -> Result<Vec<Vec<u64>>> {
    check_order(n)?;
    let perms = Permutation::all(n - 1);
    let index: HashMap<Permutation, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    // inverse[q][k][d] = 1 / (x_k + d) at point q
    let mut inverse = Vec::with_capacity(points.len());
    for point in points {
        if point.len() != n - 1 {
            return invalid(format!("point must have {} coordinates", n - 1));
        }
        let mut per_var = Vec::with_capacity(n - 1);
        for (k, &x) in point.iter().enumerate() {
            let mut row = vec![0u64; n];
            for (d, slot) in row.iter_mut().enumerate().skip(1) {
                let v = modp::add(x % prime, d as u64, prime);
                if v == 0 {
                    return Err(Error::PoleHit { var: k + 1, shift: d as u32 });
                }
                *slot = modp::inv(v, prime);
            }
            per_var.push(row);
        }
        inverse.push(per_var);
    }
    let width = perms.len();
    let zero = || vec![vec![0u64; width]; points.len()];
    fold_bundles(
        n,
        side,
        zero,
        |acc, b| {
            let slot = index[&b.order];
            for (q, inv) in inverse.iter().enumerate() {
                let mut v = 1u64;
                for (k, block) in b.blocks().into_iter().enumerate() {
                    for &d in block {
                        v = modp::mul(v, inv[k][d], prime);
                    }
                }
                acc[q][slot] = modp::add(acc[q][slot], v, prime);
            }
            Ok(())
        },
        |mut a, b| {
            for (ra, rb) in a.iter_mut().zip(b) {
                for (x, y) in ra.iter_mut().zip(rb) {
                    *x = modp::add(*x, y, prime);
                }
            }
            a
        },
    )
}

/// Outcome of randomized identity testing of `F_n = G_n`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModularCheck {
    pub equal: bool,
    pub prime: u64,
    pub points: usize,
    /// Points redrawn because they hit a pole.
    pub resampled: usize,
    pub witness: Option<Witness>,
    /// Degree bound used for the failure probability.
    pub degree_bound: u64,
    /// Probability that unequal functions agree at every point drawn
    /// (may underflow to 0; see `failure_bound_log10`).
    pub failure_bound: f64,
    pub failure_bound_log10: f64,
}

/// Compares `F_n` and `G_n` at `points` random points modulo `prime`.
pub fn verify_modular(n: usize, points: usize, seed: u64, prime: u64) -> Result<ModularCheck> {
    check_order(n)?;
    if prime < 3 {
        return invalid("prime must be at least 3");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drawn = Vec::with_capacity(points);
    let mut resampled = 0;
    while drawn.len() < points {
        let p: Vec<u64> = (0..n - 1).map(|_| rng.gen_range(0..prime)).collect();
        // poles are x_k = -d for d in 1..n
        if p.iter().any(|&x| (1..n as u64).any(|d| (x + d) % prime == 0)) {
            resampled += 1;
            continue;
        }
        drawn.push(p);
    }
    let f = stream_eval_mod_p(n, Side::Tableaux, &drawn, prime)?;
    let g = stream_eval_mod_p(n, Side::Networks, &drawn, prime)?;
    let perms = Permutation::all(n - 1);
    let mut witness = None;
    'outer: for (q, (fq, gq)) in f.iter().zip(&g).enumerate() {
        for (i, (&l, &r)) in fq.iter().zip(gq).enumerate() {
            if l != r {
                witness = Some(Witness { permutation: perms[i].clone(), point: drawn[q].clone(), prime, left: l, right: r });
                break 'outer;
            }
        }
    }
    // Over a common denominator the difference has numerator degree at most
    // the denominator degree: n-1 variables, n-1 shifts each, multiplicity <= N.
    let big_n = (n * (n - 1) / 2) as u64;
    let degree_bound = ((n - 1) * (n - 1)) as u64 * big_n;
    let failure_bound_log10 = points as f64 * (degree_bound as f64 / prime as f64).log10();
    let failure_bound = 10f64.powf(failure_bound_log10);
    Ok(ModularCheck {
        equal: witness.is_none(),
        prime,
        points,
        resampled,
        witness,
        degree_bound,
        failure_bound,
        failure_bound_log10,
    })
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::symbolic::SparsePolynomial;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn order_two() {
        let f = build_f(2).unwrap();
        let g = build_g(2).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.component(&perm(&[1])).unwrap().to_string(), "1/(x1+1)");
        assert!(equal(&f, &g).unwrap().equal);
        let p = 1_000_000_007;
        assert_eq!(f.eval_mod_p(&[1], p).unwrap(), vec![modp::inv(2, p)]);
    }

    #[test]
    fn order_three() {
        let f = build_f(3).unwrap();
        let g = build_g(3).unwrap();
        for p in [perm(&[1, 2]), perm(&[2, 1])] {
            assert_eq!(f.component(&p).unwrap().to_string(), "1/((x1+1)(x1+2)(x2+1))");
            assert_eq!(g.component(&p).unwrap().to_string(), "1/((x1+1)(x1+2)(x2+1))");
        }
        assert!(equal(&f, &g).unwrap().equal);
    }

    #[test]
    fn order_four_identity_component() {
        let id = perm(&[1, 2, 3]);
        let expected = "(x1 + 2*x2 + 5)/((x1+1)(x1+2)^2(x1+3)(x2+1)(x2+2)(x3+1))";
        for v in [build_f(4).unwrap(), build_g(4).unwrap()] {
            let c = v.component(&id).unwrap();
            assert_eq!(c.to_string(), expected);
            assert_eq!(c.reduce(), *c);
        }
    }

    #[test]
    fn identity_holds_through_order_five() {
        for n in 2..=5 {
            let f = build_f(n).unwrap();
            let g = build_g(n).unwrap();
            assert_eq!(f.len(), (1..n).product::<usize>());
            assert!(equal(&f, &g).unwrap().equal, "n = {n}");
            assert_eq!(bucket_counts(n, Side::Tableaux).unwrap(), bucket_counts(n, Side::Networks).unwrap());
        }
    }

    #[test]
    fn perturbation_is_caught_with_witness() {
        let f = build_f(3).unwrap();
        let mut h = f.clone();
        let p = perm(&[2, 1]);
        let c = h.component_mut(&p).unwrap();
        c.numerator.add_assign(&SparsePolynomial::constant(2, BigInt::from(1)));
        let cmp = equal(&f, &h).unwrap();
        assert!(!cmp.equal);
        let w = cmp.witness.unwrap();
        assert_eq!(w.permutation, p);
        assert_ne!(w.left, w.right);
        let lhs = f.component(&p).unwrap().eval_mod(&w.point, w.prime).unwrap();
        assert_eq!(lhs, w.left);
    }

    #[test]
    fn streaming_matches_exact() {
        let prime = 1_000_000_007;
        let pts: Vec<Vec<u64>> = (0..20u64).map(|i| vec![3 + 7 * i, 11 + i * i, 5 * i + 2]).collect();
        let f = build_f(4).unwrap();
        let sf = stream_eval_mod_p(4, Side::Tableaux, &pts, prime).unwrap();
        let sg = stream_eval_mod_p(4, Side::Networks, &pts, prime).unwrap();
        for (q, pt) in pts.iter().enumerate() {
            assert_eq!(f.eval_mod_p(pt, prime).unwrap(), sf[q]);
            assert_eq!(sf[q], sg[q]);
        }
        assert!(matches!(
            stream_eval_mod_p(3, Side::Tableaux, &[vec![prime - 2, 1]], prime),
            Err(Error::PoleHit { var: 1, shift: 2 })
        ));
    }

    #[test]
    fn modular_check_reports_bound() {
        let r = verify_modular(3, 20, 1, modp::MERSENNE_61).unwrap();
        assert!(r.equal && r.witness.is_none());
        assert!(r.failure_bound < 1e-300);
        assert!((r.failure_bound_log10 - 20.0 * (12.0 / modp::MERSENNE_61 as f64).log10()).abs() < 1e-9);
        assert_eq!(r.degree_bound, 12);
    }

    #[test]
    fn component_sum_matches_direct_sum() {
        use crate::combinatorics::{enumerate_syt, tableau_params};
        let x = [0.3, 1.7, 2.2];
        let direct: f64 = enumerate_syt(&staircase(4).unwrap())
            .map(|t| super::super::generating_factor(&tableau_params(&t).unwrap()).eval_f64(&x))
            .sum();
        let total: f64 = build_f(4).unwrap().eval_f64(&x).iter().sum();
        assert!((direct - total).abs() < 1e-12 * direct);
    }

    #[test]
    fn every_factor_has_degree_big_n() {
        for side in [Side::Tableaux, Side::Networks] {
            for dens in collect_buckets(5, side).unwrap().values() {
                assert!(dens.keys().all(|d| d.degree() == 10));
            }
        }
    }

    #[test]
    fn checkpoints_resume() {
        let dir = tempfile::tempdir().unwrap();
        let resumed = AtomicUsize::new(0);
        let cb = |e: &BuildEvent<'_>| {
            if let BuildEvent::Bucket { resumed: true, .. } = e {
                resumed.fetch_add(1, Ordering::Relaxed);
            }
        };
        let opts = BuildOptions { checkpoint_dir: Some(dir.path()), progress: Some(&cb) };
        let first = build(4, Side::Networks, opts).unwrap();
        assert_eq!(resumed.load(Ordering::Relaxed), 0);
        let files = fs::read_dir(dir.path().join("G-n4")).unwrap().count();
        assert_eq!(files, bucket_counts(4, Side::Networks).unwrap().len());
        let second = build(4, Side::Networks, opts).unwrap();
        assert_eq!(first, second);
        assert_eq!(resumed.load(Ordering::Relaxed), files);
    }

    #[test]
    fn order_limits() {
        assert!(matches!(build_f(1), Err(Error::InvalidArgument(_))));
        assert!(matches!(build_f(7), Err(Error::Resource(_))));
    }
}
