use rand::Rng;
use serde_json::{json, Value};

use super::{Outcome, Runner};
use crate::dynamics::{
    antidiagonal_witness, apply_group_element, apply_group_element_onto, apply_move,
    centerless_witness, expansivity_witness, steer_to_target, Configuration, Move, Window,
};
use crate::groups::{
    reduced_word_count, Alphabet, Family, FreeWord, Instance, Semidirect, SemidirectElement, VHom,
};
use crate::sample::{
    random_complete_code, random_d_word, random_distinct_points, random_point, random_reduced_word,
    random_window_sites, random_word, trial_rng,
};
use crate::thompson::{pingpong_generators, VElement};
use crate::words::{BinaryWord, CylinderSet, Point, PrefixCode};

type Suite = fn(&Runner, u64) -> Outcome;

pub(crate) const SUITES: [(&str, Suite); 10] = [
    ("words-and-codes", words_and_codes),
    ("v-group-laws", v_group_laws),
    ("transducer", transducer),
    ("ping-pong", ping_pong),
    ("freeness", freeness),
    ("antidiagonal-witness", antidiagonal),
    ("expansivity", expansivity),
    ("centerless", centerless),
    ("steering", steering),
    ("action-law", action_law),
];

/// Suite names in run order.
pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|(name, _)| *name)
}

type Check = std::result::Result<(), Value>;

fn ensure(cond: bool, what: impl FnOnce() -> Value) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn failure(trial: u64, check: Check) -> Option<Value> {
    check.err().map(|mut v| {
        if let Value::Object(map) = &mut v {
            map.insert("trial".into(), json!(trial));
        }
        v
    })
}

fn words_and_codes(r: &Runner, id: u64) -> Outcome {
    let seed = r.config.seed;
    r.trials(r.config.trials_or(1000), |i| {
        let mut rng = trial_rng(seed, id, i);
        failure(i, words_trial(&mut rng))
    })
}

/// Kraft sum equals one, computed with exact integers.
fn kraft_oracle(words: &[BinaryWord]) -> bool {
    let depth = words.iter().map(BinaryWord::len).max().unwrap_or(0);
    let total: u128 = words.iter().map(|w| 1u128 << (depth - w.len())).sum();
    total == 1u128 << depth
}

fn words_trial(rng: &mut impl Rng) -> Check {
    let size = rng.gen_range(1..=16);
    let code = random_complete_code(size, 6, rng);
    ensure(
        code.is_complete() && kraft_oracle(code.words()),
        || json!({"check": "random code complete", "code": code}),
    )?;
    let m = size + rng.gen_range(0..8);
    let sub = code
        .subdivide_to_size(m)
        .map_err(|e| json!({"check": "subdivide", "error": e.to_string()}))?;
    ensure(
        sub.len() == m
            && sub.is_complete()
            && kraft_oracle(sub.words())
            && sub
                .words()
                .iter()
                .all(|w| code.words().iter().any(|c| c.is_prefix_of(w))),
        || json!({"check": "subdivision refines", "code": code, "subdivided": sub}),
    )?;
    if size > 1 {
        let mut fewer = code.words().to_vec();
        fewer.remove(rng.gen_range(0..size));
        let partial = PrefixCode::new(fewer).expect("subset of an antichain");
        ensure(
            !partial.is_complete(),
            || json!({"check": "proper subset incomplete", "code": partial}),
        )?;
    }

    let random_set = |rng: &mut dyn rand::RngCore| {
        let k = rng.gen_range(0..5);
        let words: Vec<BinaryWord> = (0..k)
            .map(|_| {
                let len = rng.gen_range(0..=5);
                random_word(len, rng)
            })
            .collect();
        (CylinderSet::union_of(words.clone()), words)
    };
    let (s, s_words) = random_set(rng);
    let (t, t_words) = random_set(rng);
    ensure(
        CylinderSet::reduce(s.words().iter().cloned()).as_ref() == Ok(&s),
        || json!({"check": "reduced form is fixed", "set": s.words()}),
    )?;
    let in_words = |ws: &[BinaryWord], x: &Point| ws.iter().any(|w| x.in_cylinder(w));
    let (comp, inter, uni, diff) = (
        s.complement(),
        s.intersection(&t),
        s.union(&t),
        s.difference(&t),
    );
    for _ in 0..20 {
        let x = random_point(8, rng);
        let (a, b) = (in_words(&s_words, &x), in_words(&t_words, &x));
        ensure(
            s.contains_point(&x) == a
                && comp.contains_point(&x) == !a
                && inter.contains_point(&x) == (a && b)
                && uni.contains_point(&x) == (a || b)
                && diff.contains_point(&x) == (a && !b),
            || json!({"check": "set operations", "s": s_words, "t": t_words, "point": x}),
        )?;
    }

    let p = random_point(8, rng);
    let q = random_point(8, rng);
    let n = rng.gen_range(0..20);
    let w = random_word(rng.gen_range(0..6), rng);
    let prefix = p.prefix(30);
    ensure(
        (0..30).all(|k| prefix.bits()[k] == p.bit(k))
            && (0..30).all(|k| p.drop_prefix(n).bit(k) == p.bit(n + k))
            && p.prepend(&w).drop_prefix(w.len()) == p
            && p.prepend(&w).in_cylinder(&w),
        || json!({"check": "point shifts", "point": p, "n": n, "word": w}),
    )?;
    let bound = p.separation_bound(&q);
    let differ = (0..bound).find(|&k| p.bit(k) != q.bit(k));
    ensure(
        differ == p.first_difference(&q) && differ.is_none() == (p == q),
        || json!({"check": "point equality", "p": p, "q": q}),
    )
}

/// Action of a possibly unreduced list of pairs.
fn act_raw(pairs: &[(BinaryWord, BinaryWord)], x: &Point) -> Point {
    let (u, v) = pairs
        .iter()
        .find(|(u, _)| x.in_cylinder(u))
        .expect("domain covers the space");
    x.drop_prefix(u.len()).prepend(v)
}

fn unreduce(f: &VElement, rng: &mut impl Rng) -> Vec<(BinaryWord, BinaryWord)> {
    let mut pairs = f.pairs().to_vec();
    for _ in 0..rng.gen_range(1..=3) {
        let (u, v) = pairs.swap_remove(rng.gen_range(0..pairs.len()));
        pairs.push((u.child(0), v.child(0)));
        pairs.push((u.child(1), v.child(1)));
    }
    pairs
}

fn v_group_laws(r: &Runner, id: u64) -> Outcome {
    let seed = r.config.seed;
    r.trials(r.config.trials_or(1000), |i| {
        let mut rng = trial_rng(seed, id, i);
        let [f, g, h] = [(); 3].map(|_| {
            let depth = rng.gen_range(1..=4);
            VElement::random(depth, &mut rng)
        });
        let e = VElement::identity();
        let check = ensure(
            f.compose(&g.compose(&h)) == f.compose(&g).compose(&h)
                && f.compose(&e) == f
                && e.compose(&f) == f
                && f.compose(&f.inverse()).is_identity()
                && f.inverse().compose(&f).is_identity(),
            || json!({"check": "group laws", "f": f, "g": g, "h": h}),
        )
        .and_then(|()| {
            let raw = unreduce(&f, &mut rng);
            ensure(
                VElement::from_pairs(raw.clone()).as_ref() == Ok(&f),
                || json!({"check": "canonical form of refinement", "f": f}),
            )?;
            for _ in 0..100 {
                let x = random_point(8, &mut rng);
                ensure(
                    act_raw(&raw, &x) == f.act(&x),
                    || json!({"check": "refinement acts identically", "f": f, "point": x}),
                )?;
            }
            Ok(())
        });
        failure(i, check)
    })
}

fn transducer(r: &Runner, id: u64) -> Outcome {
    let seed = r.config.seed;
    r.trials(r.config.trials_or(1000), |i| {
        let mut rng = trial_rng(seed, id, i);
        let depth = rng.gen_range(1..=5);
        let f = VElement::random(depth, &mut rng);
        let x = random_point(8, &mut rng);
        let image = f.act(&x);
        let bad = (0..64).find(|&n| f.eval_bit(&x, n) != image.bit(n));
        failure(
            i,
            ensure(
                bad.is_none(),
                || json!({"check": "bit agreement", "elem": f, "point": x, "bit": bad}),
            ),
        )
    })
}

fn ping_pong(r: &Runner, _id: u64) -> Outcome {
    r.trials(1, |i| {
        let (a, b) = pingpong_generators();
        let b2 = b.pow(2);
        let set = |ws: &[&str]| CylinderSet::union_of(ws.iter().map(|w| w.parse().expect("bits")));
        let zero = set(&["0"]);
        let ones = set(&["10", "11"]);
        failure(
            i,
            ensure(
                a.pow(2).is_identity() && !a.is_identity(),
                || json!({"check": "a has order 2"}),
            )
            .and_then(|()| {
                ensure(
                    b.pow(3).is_identity() && !b.is_identity() && !b2.is_identity(),
                    || json!({"check": "b has order 3"}),
                )
            })
            .and_then(|()| {
                ensure(
                    a.image_of(&ones).is_subset(&zero),
                    || json!({"check": "a([10] ∪ [11]) ⊆ [0]", "image": a.image_of(&ones).words()}),
                )
            })
            .and_then(|()| {
                let image = b.image_of(&zero).union(&b2.image_of(&zero));
                ensure(
                    image.is_subset(&ones),
                    || json!({"check": "b[0] ∪ b²[0] ⊆ [10] ∪ [11]", "image": image.words()}),
                )
            }),
        )
    })
}

fn freeness(r: &Runner, _id: u64) -> Outcome {
    let max_len = r.config.max_word_len;
    r.trials(1, |i| {
        let cert = VHom::default_d().freeness_certificate(max_len);
        let expected = reduced_word_count(2, max_len);
        failure(
            i,
            ensure(
                cert.counterexample.is_none() && cert.words_checked == expected,
                || {
                    json!({
                        "check": "no short relation",
                        "words_checked": cert.words_checked,
                        "expected": expected,
                        "relation": cert.counterexample.map(|ls| ls.iter().map(|l| l.to_string()).collect::<Vec<_>>()),
                    })
                },
            ),
        )
    })
}

/// Membership of `f·x` in `[t]` read off the transducer.
fn lands(f: &VElement, x: &Point, t: &BinaryWord) -> bool {
    t.bits()
        .iter()
        .enumerate()
        .all(|(n, &b)| f.eval_bit(x, n) == b)
}

fn antidiagonal(r: &Runner, id: u64) -> Outcome {
    let seed = r.config.seed;
    let max_target = r.config.max_depth.min(8);
    r.trials(r.config.trials_or(500), |i| {
        let mut rng = trial_rng(seed, id, i);
        let n = rng.gen_range(1..=6);
        let points = random_distinct_points(n, 8, &mut rng);
        let targets: Vec<BinaryWord> = (0..n)
            .map(|_| {
                let len = rng.gen_range(0..=max_target);
                random_word(len, &mut rng)
            })
            .collect();
        let check = match antidiagonal_witness(&points, &targets) {
            Ok(g) => ensure(
                points.iter().zip(&targets).all(|(x, t)| lands(&g, x, t)),
                || json!({"check": "points land", "points": points, "targets": targets, "g": g}),
            ),
            Err(e) => Err(json!({"check": "synthesis", "points": points, "targets": targets, "error": e.to_string()})),
        };
        failure(i, check)
    })
}

fn expansivity(r: &Runner, id: u64) -> Outcome {
    let seed = r.config.seed;
    r.trials(r.config.trials_or(200), |i| {
        let mut rng = trial_rng(seed, id, i);
        let pts = random_distinct_points(2, 8, &mut rng);
        let (x, y) = (&pts[0], &pts[1]);
        let check = match expansivity_witness(x, y) {
            Ok(g) => ensure(
                lands(&g, x, &BinaryWord::from_bits([0]))
                    && lands(&g, y, &BinaryWord::from_bits([1])),
                || json!({"check": "separated", "x": x, "y": y, "g": g}),
            ),
            Err(e) => Err(json!({"check": "synthesis", "x": x, "y": y, "error": e.to_string()})),
        };
        failure(i, check)
    })
}

fn centerless(r: &Runner, id: u64) -> Outcome {
    let seed = r.config.seed;
    r.trials(r.config.trials_or(100), |i| {
        let mut rng = trial_rng(seed, id, i);
        let f = loop {
            let depth = rng.gen_range(1..=4);
            let f = VElement::random(depth, &mut rng);
            if !f.is_identity() {
                break f;
            }
        };
        let check = match centerless_witness(&f) {
            Ok((g, x)) => ensure(
                g.act(&f.act(&x)) != f.act(&g.act(&x)),
                || json!({"check": "non-commuting", "f": f, "g": g, "x": x}),
            ),
            Err(e) => Err(json!({"check": "synthesis", "f": f, "error": e.to_string()})),
        };
        failure(i, check)
    })
}

fn steering(r: &Runner, id: u64) -> Outcome {
    let seed = r.config.seed;
    let max_window = r.config.max_window;
    let max_target = r.config.max_depth.min(6);
    let budget = r.config.retry_budget;
    let dhom = VHom::default_d();
    r.trials(r.config.trials_or(200), |i| {
        let mut rng = trial_rng(seed, id, i);
        let sites = random_window_sites(max_window, 3, &mut rng);
        let n = sites.len();
        let pool = random_distinct_points((n.max(2) - 1).max(1), 8, &mut rng);
        let pool_size = rng.gen_range(1..=pool.len());
        let mut values: Vec<Point> = (0..n)
            .map(|_| pool[rng.gen_range(0..pool_size)].clone())
            .collect();
        if n >= 2 {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            values[b] = values[a].clone();
        }
        let targets: Vec<BinaryWord> = (0..n)
            .map(|_| {
                let len = rng.gen_range(1..=max_target);
                random_word(len, &mut rng)
            })
            .collect();
        let c = Configuration::new(Window::new(sites).expect("distinct sites"), values)
            .expect("one value per site");
        let step_seed = rng.gen();
        let check = match steer_to_target(&c, &targets, &dhom, budget, step_seed) {
            Ok(moves) => {
                let mut end = c.clone();
                let mut replayed = Ok(());
                for m in &moves {
                    match apply_move(m, &end, &dhom) {
                        Ok(next) => end = next,
                        Err(e) => {
                            replayed = Err(e);
                            break;
                        }
                    }
                }
                ensure(
                    replayed.is_ok() && end.lands_in(&targets).iter().all(|&b| b),
                    || json!({"check": "replay lands", "configuration": c, "targets": targets, "moves": moves}),
                )
            }
            Err(e) => Err(json!({"check": "steering", "configuration": c, "targets": targets, "error": e.to_string()})),
        };
        failure(i, check)
    })
}

fn action_law(r: &Runner, id: u64) -> Outcome {
    let seed = r.config.seed;
    let max_window = r.config.max_window;
    let inst = Instance::default();
    let dhom = inst.d_hom([1, 2]).expect("default letter map");
    let semi = Semidirect::new(inst.psi.clone());
    r.trials(r.config.trials_or(200), |i| {
        let mut rng = trial_rng(seed, id, i);
        let sites = random_window_sites(max_window, 3, &mut rng);
        let values = (0..sites.len())
            .map(|_| random_point(8, &mut rng))
            .collect();
        let c = Configuration::new(Window::new(sites).expect("distinct sites"), values)
            .expect("one value per site");
        let len = rng.gen_range(0..=4);
        let k = random_reduced_word(Alphabet::AB, &[Family::A, Family::B], len, &mut rng);
        let g = SemidirectElement::new(
            k.clone(),
            FreeWord::identity(Alphabet::C),
            FreeWord::identity(Alphabet::D),
        )
        .expect("valid components");
        let check = kaction_agrees(&c, &k, &g, &inst, &dhom).and_then(|()| {
            let random_element = |rng: &mut rand_chacha::ChaCha8Rng| {
                let (l1, l2, l3) = (
                    rng.gen_range(0..=3),
                    rng.gen_range(0..=2),
                    rng.gen_range(0..=2),
                );
                SemidirectElement::new(
                    random_reduced_word(Alphabet::AB, &[Family::A, Family::B], l1, rng),
                    random_reduced_word(Alphabet::C, &[Family::C], l2, rng),
                    random_d_word(l3, rng),
                )
                .expect("valid components")
            };
            let g1 = random_element(&mut rng);
            let g2 = random_element(&mut rng);
            composition_agrees(&c, &g1, &g2, &inst, &semi)
        });
        failure(i, check)
    })
}

/// `(k, ε, ε)` acts as the sequence of letter moves of `k`, rightmost first.
fn kaction_agrees(
    c: &Configuration,
    k: &FreeWord,
    g: &SemidirectElement,
    inst: &Instance,
    dhom: &VHom,
) -> Check {
    let err = |e: crate::Error| json!({"check": "k-action", "error": e.to_string()});
    let mut by_moves = c.clone();
    for &l in k.letters().iter().rev() {
        let elem = inst
            .eval_ab(&FreeWord::new(Alphabet::AB, [l]).map_err(err)?)
            .map_err(err)?;
        let m = if l.gen.family == Family::A {
            Move::a(elem)
        } else {
            Move::b(elem)
        };
        by_moves = apply_move(&m, &by_moves, dhom).map_err(err)?;
    }
    let by_formula = apply_group_element(g, c, inst).map_err(err)?;
    ensure(
        by_moves == by_formula,
        || json!({"check": "k-action", "configuration": c, "k": k.tokens(), "moves": by_moves, "formula": by_formula}),
    )
}

/// Applying `g1` then `g2` equals applying `g2·g1`.
fn composition_agrees(
    c: &Configuration,
    g1: &SemidirectElement,
    g2: &SemidirectElement,
    inst: &Instance,
    semi: &Semidirect,
) -> Check {
    let err = |e: crate::Error| json!({"check": "composition", "error": e.to_string()});
    let w1 = c.window().translate(&g1.h).map_err(err)?;
    let first = apply_group_element_onto(g1, c, inst, &w1).map_err(err)?;
    let w2 = w1.translate(&g2.h).map_err(err)?;
    let twice = apply_group_element_onto(g2, &first, inst, &w2).map_err(err)?;
    let product = semi.mul(g2, g1).map_err(err)?;
    let once = apply_group_element_onto(&product, c, inst, &w2).map_err(err)?;
    ensure(
        twice == once,
        || json!({"check": "composition", "configuration": c, "g1": g1, "g2": g2, "twice": twice, "once": once}),
    )
}
