//! Steering a windowed configuration into target cylinders with moves from
//! `A ∗ B`: collisions `x_f = x_{f'}` are separated one at a time by an
//! A-move followed by a B-move, after which a single A-move finishes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::witness::{antidiagonal_witness, index_width};
use super::{replay, Configuration, Move, SiteConjugators};
use crate::error::{Error, Result};
use crate::groups::VHom;
use crate::thompson::{pingpong_generators, VElement};
use crate::words::{BinaryWord, CylinderSet, Point};

/// Depth increase of the chosen cylinders after a failed attempt.
const DEPTH_STEP: usize = 2;

/// Largest depth of the random B-candidates tried after the fixed list.
const MAX_CANDIDATE_DEPTH: usize = 6;

/// All pairs `i < j` with equal values, in lexicographic order.
pub fn colliding_pairs(c: &Configuration) -> Vec<(usize, usize)> {
    let v = c.values();
    let mut out = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] == v[j] {
                out.push((i, j));
            }
        }
    }
    out
}

/// Fixed candidates `a, b, b², ab, ba`, then seeded random elements of
/// slowly increasing depth.
struct Candidates {
    fixed: Vec<VElement>,
    next: usize,
    rng: ChaCha8Rng,
}

impl Candidates {
    fn new(seed: u64) -> Self {
        let (a, b) = pingpong_generators();
        let b2 = &b * &b;
        let fixed = vec![a.clone(), b.clone(), b2, &a * &b, &b * &a];
        Candidates {
            fixed,
            next: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Iterator for Candidates {
    type Item = VElement;

    fn next(&mut self) -> Option<VElement> {
        let i = self.next;
        self.next += 1;
        Some(match self.fixed.get(i) {
            Some(e) => e.clone(),
            None => {
                let depth = (2 + (i - self.fixed.len()) / 4).min(MAX_CANDIDATE_DEPTH);
                VElement::random(depth, &mut self.rng)
            }
        })
    }
}

/// Distinct values with the sites holding them, in order of first
/// appearance.
fn value_classes(values: &[Point]) -> Vec<(Point, Vec<usize>)> {
    let mut classes: Vec<(Point, Vec<usize>)> = Vec::new();
    for (i, x) in values.iter().enumerate() {
        match classes.iter_mut().find(|(p, _)| p == x) {
            Some((_, sites)) => sites.push(i),
            None => classes.push((x.clone(), vec![i])),
        }
    }
    classes
}

/// Picks a cylinder for every value class so that after the B-move no two
/// sites holding different values can meet: for classes `k ≠ l` and sites
/// `s ∈ k`, `t ∈ l`, `M_s(T_k) ∩ M_t(T_l) = ∅` where `M_s` is the B-move as
/// seen at site `s`. The class `first` is placed inside `[region]`.
fn choose_cylinders(
    classes: &[(Point, Vec<usize>)],
    first: usize,
    region: &BinaryWord,
    depth: usize,
    relative: &[Vec<VElement>],
) -> Option<Vec<BinaryWord>> {
    let mut chosen: Vec<Option<BinaryWord>> = vec![None; classes.len()];
    let order = std::iter::once(first).chain((0..classes.len()).filter(|&k| k != first));
    for k in order {
        let mut forbidden = CylinderSet::empty();
        for (l, cyl) in chosen.iter().enumerate() {
            let Some(cyl) = cyl else { continue };
            let cyl = CylinderSet::cylinder(cyl.clone());
            for &s in &classes[k].1 {
                for &t in &classes[l].1 {
                    // M_s⁻¹ ∘ M_t
                    forbidden = forbidden.union(&relative[s][t].image_of(&cyl));
                }
            }
        }
        let allowed = if k == first {
            CylinderSet::cylinder(region.clone())
        } else {
            CylinderSet::whole()
        };
        let free = allowed.difference(&forbidden);
        let word = free.words().first()?;
        chosen[k] = Some(word.padded(depth));
    }
    chosen.into_iter().collect()
}

/// Two moves, an A-move then a B-move, after which the values at sites `i`
/// and `j` differ and every pair of sites that held different values
/// still does.
///
/// A B-candidate `b` works when `g = M_{f'}⁻¹ ∘ M_f` is not the identity,
/// where `M_f = W_f⁻¹ ∘ b ∘ W_f`; the colliding value is then sent into a
/// cylinder displaced by `g`. Each rejected candidate and each depth
/// escalation consumes one unit of `budget`.
pub fn separate_collision(
    c: &Configuration,
    i: usize,
    j: usize,
    dhom: &VHom,
    budget: usize,
    seed: u64,
) -> Result<Vec<Move>> {
    let n = c.len();
    if i >= n || j >= n {
        return Err(Error::NoCollision {
            i,
            j,
            reason: format!("window has {n} sites"),
        });
    }
    if i == j {
        return Err(Error::NoCollision {
            i,
            j,
            reason: "sites coincide".into(),
        });
    }
    if c.values()[i] != c.values()[j] {
        return Err(Error::NoCollision {
            i,
            j,
            reason: "values differ".into(),
        });
    }

    let conj = SiteConjugators::new(c.window(), dhom)?;
    let classes = value_classes(c.values());
    let star = classes
        .iter()
        .position(|(_, sites)| sites.contains(&i))
        .expect("every site has a class");
    let points: Vec<Point> = classes.iter().map(|(p, _)| p.clone()).collect();
    let before = c.values();

    let mut attempts = 0;
    let mut identity_candidates = 0;
    let mut deepest = 0;
    for beta in Candidates::new(seed) {
        if attempts >= budget {
            break;
        }
        attempts += 1;
        let twisted: Vec<VElement> = (0..n).map(|s| conj.twisted(&beta, s)).collect();
        let g = twisted[j].inverse().compose(&twisted[i]);
        if g.is_identity() {
            identity_candidates += 1;
            continue;
        }
        let displaced = g.displaced_cylinder()?;
        let inverses: Vec<VElement> = twisted.iter().map(VElement::inverse).collect();
        let relative: Vec<Vec<VElement>> = inverses
            .iter()
            .map(|ms_inv| twisted.iter().map(|mt| ms_inv.compose(mt)).collect())
            .collect();

        let mut depth = displaced.len() + index_width(classes.len());
        loop {
            deepest = deepest.max(depth);
            if let Some(cylinders) = choose_cylinders(&classes, star, &displaced, depth, &relative)
            {
                let alpha = antidiagonal_witness(&points, &cylinders)?;
                let moves = vec![Move::a(alpha), Move::b(beta.clone())];
                let after = replay(c, &moves, dhom)?;
                if separation_holds(before, after.values(), i, j) {
                    return Ok(moves);
                }
            }
            if attempts >= budget {
                break;
            }
            attempts += 1;
            depth += DEPTH_STEP;
        }
    }
    Err(Error::BudgetExhausted {
        budget,
        diagnostics: format!(
            "separating sites {i} and {j}: {identity_candidates} candidates gave a trivial \
             commutator, deepest cylinder depth tried {deepest}"
        ),
    })
}

fn separation_holds(before: &[Point], after: &[Point], i: usize, j: usize) -> bool {
    if after[i] == after[j] {
        return false;
    }
    for s in 0..before.len() {
        for t in s + 1..before.len() {
            if before[s] != before[t] && after[s] == after[t] {
                return false;
            }
        }
    }
    true
}

/// A move sequence whose replay puts every coordinate into its target
/// cylinder: collisions are separated first, then one A-move places the
/// now distinct values.
pub fn steer_to_target(
    c: &Configuration,
    targets: &[BinaryWord],
    dhom: &VHom,
    budget: usize,
    seed: u64,
) -> Result<Vec<Move>> {
    if targets.len() != c.len() {
        return Err(Error::LengthMismatch(format!(
            "{} sites but {} targets",
            c.len(),
            targets.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut moves = Vec::new();
    let mut current = c.clone();
    while let Some(&(i, j)) = colliding_pairs(&current).first() {
        let step = separate_collision(&current, i, j, dhom, budget, rng.gen())?;
        current = replay(&current, &step, dhom)?;
        moves.extend(step);
    }
    if current.lands_in(targets).iter().all(|&b| b) {
        return Ok(moves);
    }
    let alpha = antidiagonal_witness(current.values(), targets)?;
    moves.push(Move::a(alpha));
    let end = replay(c, &moves, dhom)?;
    if let Some(k) = end.lands_in(targets).iter().position(|&b| !b) {
        return Err(Error::WitnessFailed(format!(
            "site {k} ended at {} outside [{}]",
            end.values()[k],
            targets[k]
        )));
    }
    Ok(moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{Window, DEFAULT_RETRY_BUDGET};
    use crate::groups::{Alphabet, Family, FreeWord, Generator};
    use crate::words::w;

    fn d(s: &str) -> FreeWord {
        FreeWord::parse(Alphabet::D, s)
    }

    fn config(sites: &[&str], values: &[&str]) -> Configuration {
        Configuration::new(
            Window::new(sites.iter().map(|s| d(s)).collect()).unwrap(),
            values.iter().map(|v| v.parse().unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn separates_two_sites() {
        let dhom = VHom::default_d();
        let c = config(&["", "d1"], &["(0)", "(0)"]);
        let moves = separate_collision(&c, 0, 1, &dhom, DEFAULT_RETRY_BUDGET, 0).unwrap();
        assert_eq!(moves.len(), 2);
        let after = replay(&c, &moves, &dhom).unwrap();
        assert_ne!(after.values()[0], after.values()[1]);
    }

    #[test]
    fn separation_keeps_distinct_pairs_distinct() {
        let dhom = VHom::default_d();
        let c = config(&["", "d1", "d2"], &["(0)", "(0)", "1(0)"]);
        let moves = separate_collision(&c, 0, 1, &dhom, DEFAULT_RETRY_BUDGET, 0).unwrap();
        let after = replay(&c, &moves, &dhom).unwrap();
        assert!(colliding_pairs(&after).is_empty());
    }

    #[test]
    fn separation_errors() {
        let dhom = VHom::default_d();
        let c = config(&["", "d1"], &["(0)", "(1)"]);
        assert!(matches!(
            separate_collision(&c, 0, 0, &dhom, 4, 0),
            Err(Error::NoCollision { .. })
        ));
        assert!(matches!(
            separate_collision(&c, 0, 1, &dhom, 4, 0),
            Err(Error::NoCollision { .. })
        ));
        // d1 and d2 act identically, so no B-move can tell the sites apart
        let (x1, _) = crate::thompson::free_generators();
        let degenerate = VHom::new([
            (Generator::new(Family::D, 1), x1.clone()),
            (Generator::new(Family::D, 2), x1),
        ]);
        let c = config(&["d1", "d2"], &["(0)", "(0)"]);
        assert!(matches!(
            separate_collision(&c, 0, 1, &degenerate, 6, 0),
            Err(Error::BudgetExhausted { budget: 6, .. })
        ));
    }

    #[test]
    fn steer_examples() {
        let dhom = VHom::default_d();
        let c = config(&["", "d1"], &["(0)", "(0)"]);
        let targets = [w("0"), w("1")];
        let moves = steer_to_target(&c, &targets, &dhom, DEFAULT_RETRY_BUDGET, 0).unwrap();
        assert!(moves.len() <= 3);
        let end = replay(&c, &moves, &dhom).unwrap();
        assert_eq!(end.lands_in(&targets), vec![true, true]);

        let c = config(&["", "d1"], &["(0)", "(1)"]);
        let moves = steer_to_target(&c, &[w("0"), w("1")], &dhom, 4, 0).unwrap();
        assert!(moves.is_empty());

        let empty = config(&[], &[]);
        assert!(steer_to_target(&empty, &[], &dhom, 4, 0)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn steer_two_collision_pairs() {
        let dhom = VHom::default_d();
        let c = config(
            &["", "d1", "d2^-1", "d1 d2"],
            &["(0)", "(0)", "01(1)", "01(1)"],
        );
        let targets = [w("110100"), w("110100"), w("000111"), w("1")];
        let moves = steer_to_target(&c, &targets, &dhom, DEFAULT_RETRY_BUDGET, 9).unwrap();
        let end = replay(&c, &moves, &dhom).unwrap();
        assert!(end.lands_in(&targets).iter().all(|&b| b));
    }
}
