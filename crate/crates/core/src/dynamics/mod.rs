//! Finite windows of the induced system `X^D`.
//!
//! A [`Configuration`] records the coordinates `x_f` of a point of `X^D` at
//! finitely many sites `f ∈ D`. `A` acts diagonally; `b ∈ B` acts at site
//! `f` through `W_f⁻¹ ∘ b ∘ W_f`, where `W_f` is the V-image of `f`.

mod steer;
mod witness;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groups::{Alphabet, DWord, FreeWord, Instance, SemidirectElement, VHom};
use crate::thompson::VElement;
use crate::words::{BinaryWord, Point};

pub use steer::{colliding_pairs, separate_collision, steer_to_target};
pub use witness::{antidiagonal_witness, centerless_witness, expansivity_witness};

/// Default retry budget for collision separation and steering.
pub const DEFAULT_RETRY_BUDGET: usize = 32;

/// Distinct reduced D-words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    sites: Vec<FreeWord>,
}

impl Window {
    pub fn new(sites: Vec<FreeWord>) -> Result<Self> {
        for (i, s) in sites.iter().enumerate() {
            if s.alphabet() != Alphabet::D {
                return Err(Error::AlphabetMismatch {
                    left: Alphabet::D.to_string(),
                    right: s.alphabet().to_string(),
                });
            }
            if sites[..i].contains(s) {
                return Err(Error::Duplicate(format!("site {s}")));
            }
        }
        Ok(Window { sites })
    }

    pub fn sites(&self) -> &[FreeWord] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn index_of(&self, site: &FreeWord) -> Option<usize> {
        self.sites.iter().position(|s| s == site)
    }

    /// `h·W`, the window a configuration on `W` is carried to by `h`.
    pub fn translate(&self, h: &FreeWord) -> Result<Window> {
        let sites = self
            .sites
            .iter()
            .map(|s| h.mul(s))
            .collect::<Result<Vec<_>>>()?;
        Window::new(sites)
    }
}

/// One point of `X` per site of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    window: Window,
    values: Vec<Point>,
}

impl Configuration {
    pub fn new(window: Window, values: Vec<Point>) -> Result<Self> {
        if window.len() != values.len() {
            return Err(Error::LengthMismatch(format!(
                "{} sites but {} values",
                window.len(),
                values.len()
            )));
        }
        Ok(Configuration { window, values })
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn sites(&self) -> &[FreeWord] {
        self.window.sites()
    }

    pub fn values(&self) -> &[Point] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Whether every coordinate lies in its target cylinder.
    pub fn lands_in(&self, targets: &[BinaryWord]) -> Vec<bool> {
        self.values
            .iter()
            .zip(targets)
            .map(|(x, t)| x.in_cylinder(t))
            .collect()
    }
}

/// Which factor of `A ∗ B` a move comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    /// Acts by the same element at every site.
    #[serde(rename = "A")]
    ADiagonal,
    /// Acts at site `f` by `W_f⁻¹ ∘ elem ∘ W_f`.
    #[serde(rename = "B")]
    BTwisted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub role: Role,
    pub elem: VElement,
}

impl Move {
    pub fn a(elem: VElement) -> Self {
        Move {
            role: Role::ADiagonal,
            elem,
        }
    }

    pub fn b(elem: VElement) -> Self {
        Move {
            role: Role::BTwisted,
            elem,
        }
    }
}

/// `W_f` and `W_f⁻¹` for every site of a window.
#[derive(Clone, Debug)]
pub struct SiteConjugators {
    forward: Vec<VElement>,
    backward: Vec<VElement>,
}

impl SiteConjugators {
    pub fn new(window: &Window, dhom: &VHom) -> Result<Self> {
        let forward = window
            .sites()
            .iter()
            .map(|f| dhom.eval(f))
            .collect::<Result<Vec<_>>>()?;
        let backward = forward.iter().map(VElement::inverse).collect();
        Ok(SiteConjugators { forward, backward })
    }

    pub fn forward(&self, site: usize) -> &VElement {
        &self.forward[site]
    }

    /// `W_f⁻¹ ∘ elem ∘ W_f`: how a B-letter acting by `elem` acts at `site`.
    pub fn twisted(&self, elem: &VElement, site: usize) -> VElement {
        self.backward[site].compose(&elem.compose(&self.forward[site]))
    }

    fn act_twisted(&self, elem: &VElement, site: usize, x: &Point) -> Point {
        self.backward[site].act(&elem.act(&self.forward[site].act(x)))
    }
}

/// Applies one move to every coordinate.
pub fn apply_move(m: &Move, c: &Configuration, dhom: &VHom) -> Result<Configuration> {
    let values = match m.role {
        Role::ADiagonal => c.values.iter().map(|x| m.elem.act(x)).collect(),
        Role::BTwisted => {
            let conj = SiteConjugators::new(&c.window, dhom)?;
            c.values
                .iter()
                .enumerate()
                .map(|(i, x)| conj.act_twisted(&m.elem, i, x))
                .collect()
        }
    };
    Ok(Configuration {
        window: c.window.clone(),
        values,
    })
}

/// Applies moves in order.
pub fn replay(c: &Configuration, moves: &[Move], dhom: &VHom) -> Result<Configuration> {
    let conj = SiteConjugators::new(&c.window, dhom)?;
    let mut values = c.values.clone();
    for m in moves {
        for (i, x) in values.iter_mut().enumerate() {
            *x = match m.role {
                Role::ADiagonal => m.elem.act(x),
                Role::BTwisted => conj.act_twisted(&m.elem, i, x),
            };
        }
    }
    Ok(Configuration {
        window: c.window.clone(),
        values,
    })
}

/// The action of `g = (k, h)` on the induction, read on the same window:
/// the value at site `r` becomes `ψ_{r⁻¹}(k_ab) · z_{h⁻¹r}`. The C-component
/// acts trivially. Fails unless `h⁻¹r` is a site for every site `r`.
pub fn apply_group_element(
    g: &SemidirectElement,
    c: &Configuration,
    inst: &Instance,
) -> Result<Configuration> {
    apply_group_element_onto(g, c, inst, &c.window)
}

/// As [`apply_group_element`], producing the values on `target`. Every
/// `h⁻¹r` for `r` in `target` must be a site of `c`; `target = h·W` always
/// qualifies.
pub fn apply_group_element_onto(
    g: &SemidirectElement,
    c: &Configuration,
    inst: &Instance,
    target: &Window,
) -> Result<Configuration> {
    let h_inv = g.h.inv();
    let values = target
        .sites()
        .iter()
        .map(|r| {
            let source = h_inv.mul(r)?;
            let idx = c
                .window
                .index_of(&source)
                .ok_or_else(|| Error::WindowNotClosed(r.to_string()))?;
            let k = inst.psi.apply(&r.inv(), &g.k_ab)?;
            Ok(inst.eval_ab(&k)?.act(&c.values[idx]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Configuration {
        window: target.clone(),
        values,
    })
}

#[derive(Serialize, Deserialize)]
struct ConfigurationRepr {
    sites: Vec<DWord>,
    values: Vec<Point>,
}

impl Serialize for Configuration {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ConfigurationRepr {
            sites: self.window.sites.iter().cloned().map(DWord).collect(),
            values: self.values.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ConfigurationRepr::deserialize(deserializer)?;
        let window = Window::new(repr.sites.into_iter().map(|d| d.0).collect())
            .map_err(serde::de::Error::custom)?;
        Configuration::new(window, repr.values).map_err(serde::de::Error::custom)
    }
}
