use gzb_core::error::Error;
use gzb_core::exact_algebra::Dyadic;
use gzb_core::torsion_core::smith::{smith, Ring};
use gzb_core::torsion_core::{verify_tower, Coord, Group, GroupDescriptor, GroupElem, SummandKind, Tower};
use num_bigint::BigInt;

use crate::error::{CliError, CliResult};

/// A homomorphism `φ: domain → codomain` between sums of cyclic and Prüfer
/// groups, given by an integer matrix acting on `Q₂/Z₂` coordinates:
/// `φ(x)_j = Σ_i x_i·map[i][j]`. The kernel is certified to have exponent 2.
#[derive(Debug, Clone)]
pub struct QuotientModel {
    domain: Group,
    codomain: Group,
    map: Vec<Vec<i64>>,
}

fn to_dyadic(kind: SummandKind, c: &Coord) -> Dyadic {
    match (kind, c) {
        (SummandKind::Cyclic(n), Coord::Cyc(r)) => Dyadic::new(*r, n),
        (_, Coord::Pru(d)) => d.clone(),
        _ => unreachable!("validated coordinates"),
    }
}

fn from_dyadic(kind: SummandKind, d: &Dyadic) -> Option<Coord> {
    match kind {
        SummandKind::Cyclic(n) => d.scaled_u128(n).map(|r| Coord::Cyc(r as u64)),
        SummandKind::Pruefer => Some(Coord::Pru(d.clone())),
        SummandKind::GenPruefer(_) => None,
    }
}

fn plain_kinds(d: &GroupDescriptor) -> bool {
    d.summands.iter().all(|k| !matches!(k, SummandKind::GenPruefer(_)))
}

impl QuotientModel {
    pub fn new(domain: GroupDescriptor, codomain: GroupDescriptor, map: Vec<Vec<i64>>) -> CliResult<Self> {
        if !plain_kinds(&domain) || !plain_kinds(&codomain) {
            return Err(Error::Unsupported("quotient models use cyclic and Prüfer summands only".into()).into());
        }
        if map.len() != domain.len() || map.iter().any(|r| r.len() != codomain.len()) {
            return Err(Error::DescriptorMismatch("map shape differs from the summand counts".into()).into());
        }
        for (i, row) in map.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                let ok = match (domain.summands[i], codomain.summands[j]) {
                    (_, SummandKind::Pruefer) => true,
                    (SummandKind::Cyclic(n), SummandKind::Cyclic(k)) => n <= k || m % (1i64 << (n - k)) == 0,
                    _ => m == 0,
                };
                if !ok {
                    return Err(Error::Precondition(format!("map entry ({i},{j}) is not well defined")).into());
                }
            }
        }
        let model = QuotientModel {
            domain: Group::new(domain),
            codomain: Group::new(codomain),
            map,
        };
        if !model.kernel_exponent_two()? {
            return Err(Error::Precondition("kernel of the model map is not annihilated by 2".into()).into());
        }
        Ok(model)
    }

    pub fn domain(&self) -> &Group {
        &self.domain
    }

    pub fn codomain(&self) -> &Group {
        &self.codomain
    }

    pub fn apply(&self, x: &GroupElem) -> CliResult<GroupElem> {
        self.domain.validate(x)?;
        let ds = self.domain.summands();
        let mut out = Vec::with_capacity(self.codomain.summands().len());
        for (j, &kind) in self.codomain.summands().iter().enumerate() {
            let v: Dyadic = x
                .coords
                .iter()
                .zip(ds)
                .zip(&self.map)
                .map(|((c, &k), row)| to_dyadic(k, c).mul_int(&BigInt::from(row[j])))
                .sum();
            out.push(from_dyadic(kind, &v).ok_or_else(|| CliError::Failed(format!("φ leaves summand {j}")))?);
        }
        Ok(GroupElem::new(out))
    }

    /// A kernel element of order `2^m` yields one of order exactly 4, so
    /// scanning the 4-torsion decides whether the kernel has exponent 2.
    pub fn kernel_exponent_two(&self) -> CliResult<bool> {
        for x in self.domain.torsion_elements(2, 0)? {
            if self.apply(&x)?.is_zero() && !self.domain.double(&x)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Nonzero kernel elements (all of order 2).
    pub fn kernel_elements(&self) -> CliResult<Vec<GroupElem>> {
        let mut out = Vec::new();
        for x in self.domain.torsion_elements(1, 0)? {
            if !x.is_zero() && self.apply(&x)?.is_zero() {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Some `x` with `φ(x) = y`, solved over `Z/2^K` by Smith normal form.
    pub fn preimage(&self, y: &GroupElem) -> CliResult<GroupElem> {
        self.codomain.validate(y)?;
        let cod = self.codomain.summands();
        let t = y
            .coords
            .iter()
            .zip(cod)
            .map(|(c, &k)| to_dyadic(k, c).order_log2())
            .max()
            .unwrap_or(0);
        let ncyc = self
            .domain
            .summands()
            .iter()
            .chain(cod)
            .map(|k| if let SummandKind::Cyclic(n) = k { *n } else { 0 })
            .max()
            .unwrap_or(0);
        let k = t + ncyc + 2;
        if k > 120 {
            return Err(Error::OutOfRange("element order too large for the preimage solver".into()).into());
        }
        let ring = Ring::new(k);
        let ks: Vec<u32> = self
            .domain
            .summands()
            .iter()
            .map(|s| if let SummandKind::Cyclic(n) = s { (*n).min(k) } else { k })
            .collect();
        let a: Vec<Vec<u128>> = self
            .map
            .iter()
            .zip(&ks)
            .map(|(row, &ki)| {
                row.iter()
                    .map(|&m| ring.mul(ring.from_i128(m as i128), 1u128 << (k - ki)))
                    .collect()
            })
            .collect();
        let b: Vec<u128> = y
            .coords
            .iter()
            .zip(cod)
            .map(|(c, &kind)| to_dyadic(kind, c).scaled_u128(k).expect("order below K"))
            .collect();
        let sol = smith(&a, k)
            .solve_row(&b)
            .ok_or_else(|| Error::Precondition(format!("{y} is not in the image of φ")))?;
        let coords = sol
            .iter()
            .zip(&ks)
            .zip(self.domain.summands())
            .map(|((&ai, &ki), &kind)| match kind {
                SummandKind::Cyclic(_) => Coord::Cyc((ai & ((1u128 << ki) - 1)) as u64),
                _ => Coord::Pru(Dyadic::new(BigInt::from(ai), ki)),
            })
            .collect();
        let x = GroupElem::new(coords);
        if self.apply(&x)? != *y {
            return Err(Error::Postcondition(format!("solved preimage of {y} does not map back")).into());
        }
        Ok(x)
    }
}

/// How preimages are chosen during lifting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreimageChoice {
    Solved,
    /// The solved preimage shifted by a kernel element, rotating through them.
    Perturbed,
}

/// `α_0 = 2·φ⁻¹(t_1)` and the lifted tower `α_n = 2·φ⁻¹(t_{n+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lift {
    pub base: GroupElem,
    pub tower: Tower,
    /// Whether `α_0` equals the given `α` (they differ by a kernel element otherwise).
    pub base_is_alpha: bool,
}

pub fn lift_tower(model: &QuotientModel, alpha: &GroupElem, tower_down: &Tower) -> CliResult<Lift> {
    lift_tower_with(model, alpha, tower_down, PreimageChoice::Solved)
}

pub fn lift_tower_with(
    model: &QuotientModel,
    alpha: &GroupElem,
    tower_down: &Tower,
    choice: PreimageChoice,
) -> CliResult<Lift> {
    let (dom, cod) = (model.domain(), model.codomain());
    let n = tower_down.len();
    if n < 2 || !verify_tower(cod, tower_down, n - 1) {
        return Err(Error::Precondition("tower_down is not a divisible tower".into()).into());
    }
    let image = model.apply(alpha)?;
    if cod.double(&tower_down.elems[0])? != image {
        return Err(Error::Precondition("tower_down does not sit over φ(α)".into()).into());
    }
    let kernel = match choice {
        PreimageChoice::Solved => Vec::new(),
        PreimageChoice::Perturbed => model.kernel_elements()?,
    };
    let lift = |i: usize, y: &GroupElem| -> CliResult<GroupElem> {
        let mut x = model.preimage(y)?;
        if !kernel.is_empty() {
            x = dom.add(&x, &kernel[i % kernel.len()])?;
        }
        Ok(dom.double(&x)?)
    };
    let base = lift(0, &tower_down.elems[0])?;
    let elems = (1..n)
        .map(|i| lift(i, &tower_down.elems[i]))
        .collect::<CliResult<Vec<_>>>()?;
    let tower = Tower::new(elems);
    for (i, a) in tower.elems.iter().enumerate() {
        if model.apply(a)? != tower_down.elems[i] {
            return Err(Error::Postcondition(format!("φ(α_{}) ≠ t_{}", i + 1, i + 1)).into());
        }
    }
    if model.apply(&base)? != image || dom.double(&tower.elems[0])? != base {
        return Err(Error::Postcondition("lifted tower does not sit over α_0".into()).into());
    }
    if !verify_tower(dom, &tower, tower.len() - 1) {
        return Err(Error::Postcondition("lifted sequence violates 2^m α_n = α_(n-m)".into()).into());
    }
    Ok(Lift {
        base_is_alpha: base == *alpha,
        base,
        tower,
    })
}
