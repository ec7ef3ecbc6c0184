//! Rational surgery bookkeeping: framed components with rational coefficients
//! and pairwise linking numbers, Rolfsen twists, blow-downs, and the two
//! slope pipelines relating fillings of `D_n`, `D'_n` and the figure-eight knot.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{ExactRational, Slope};
use crate::twistknots::Family;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurgeryComponent {
    pub id: String,
    pub coefficient: Slope,
    /// Asserted by the caller; the engine cannot recognise unknots.
    pub unknotted: bool,
    pub linking: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(transparent)]
pub struct SurgeryPresentation {
    components: Vec<SurgeryComponent>,
}

impl SurgeryPresentation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn components(&self) -> &[SurgeryComponent] {
        &self.components
    }

    pub fn get(&self, id: &str) -> Result<&SurgeryComponent> {
        self.components.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownComponent(id.to_string()))
    }

    fn get_mut(&mut self, id: &str) -> Result<&mut SurgeryComponent> {
        self.components.iter_mut().find(|c| c.id == id).ok_or_else(|| Error::UnknownComponent(id.to_string()))
    }

    pub fn coefficient(&self, id: &str) -> Result<&Slope> {
        Ok(&self.get(id)?.coefficient)
    }

    pub fn linking(&self, a: &str, b: &str) -> i64 {
        self.get(a).ok().and_then(|c| c.linking.get(b).copied()).unwrap_or(0)
    }

    /// Adds a component; `links` lists linking numbers with existing components.
    pub fn with_component(
        mut self,
        id: &str,
        coefficient: Slope,
        unknotted: bool,
        links: &[(&str, i64)],
    ) -> Result<Self> {
        if self.get(id).is_ok() {
            return Err(Error::InvalidArgument(format!("duplicate component {id}")));
        }
        let mut linking = BTreeMap::new();
        for &(other, lk) in links {
            if other == id {
                return Err(Error::InvalidArgument(format!("{id} cannot link itself")));
            }
            self.get_mut(other)?.linking.insert(id.to_string(), lk);
            linking.insert(other.to_string(), lk);
        }
        self.components.push(SurgeryComponent { id: id.to_string(), coefficient, unknotted, linking });
        Ok(self)
    }

    pub fn set_unknotted(mut self, id: &str, unknotted: bool) -> Result<Self> {
        self.get_mut(id)?.unknotted = unknotted;
        Ok(self)
    }

    fn remove(mut self, id: &str) -> Self {
        self.components.retain(|c| c.id != id);
        for c in &mut self.components {
            c.linking.remove(id);
        }
        self
    }
}

/// Twists `t` times along the unknotted component `u`: every other component
/// gets `r ↦ r + t·lk(u,i)²`, linking numbers gain `t·lk(u,i)·lk(u,j)`, and
/// `u` itself gets `c ↦ 1/(1/c + t)`.
pub fn rolfsen_twist(p: &SurgeryPresentation, u: &str, t: i64) -> Result<SurgeryPresentation> {
    let cu = p.get(u)?;
    if !cu.unknotted {
        return Err(Error::InvalidArgument(format!("component {u} is not flagged unknotted")));
    }
    if t == 0 {
        return Err(Error::InvalidArgument("twist count must be nonzero".into()));
    }
    let tb = BigInt::from(t);
    let lk_u: BTreeMap<String, i64> = cu.linking.clone();
    let mut out = p.clone();
    for c in &mut out.components {
        if c.id == u {
            let (num, den) = (c.coefficient.numer().clone(), c.coefficient.denom().clone());
            c.coefficient = ExactRational::new(num.clone(), den + &tb * num)?;
            continue;
        }
        let l = lk_u.get(&c.id).copied().unwrap_or(0);
        if l != 0 && !c.coefficient.is_infinite() {
            let add = ExactRational::from_int(&tb * BigInt::from(l * l));
            c.coefficient = c.coefficient.checked_add(&add)?;
        }
        let li = l;
        for (other, lk) in c.linking.iter_mut() {
            if other == u {
                continue;
            }
            let lj = lk_u.get(other).copied().unwrap_or(0);
            *lk += t * li * lj;
        }
    }
    Ok(out)
}

/// Removes an unknotted component with coefficient `-1/t`, twisting the rest `t` times.
pub fn blow_down(p: &SurgeryPresentation, u: &str) -> Result<SurgeryPresentation> {
    let c = p.get(u)?;
    let not_blowdownable = || Error::NotBlowdownable { id: u.to_string(), coefficient: c.coefficient.to_string() };
    if c.coefficient.is_infinite() || !c.coefficient.numer().abs().is_one() {
        return Err(not_blowdownable());
    }
    // -1/t = num/den with num = ±1  =>  t = -den/num.
    let t = -(c.coefficient.denom() * c.coefficient.numer());
    let t = t.to_i64().ok_or_else(not_blowdownable)?;
    if t.is_zero() {
        return Err(not_blowdownable());
    }
    let twisted = rolfsen_twist(p, u, t)?;
    debug_assert!(twisted.coefficient(u).map(|s| s.is_infinite()).unwrap_or(false));
    Ok(twisted.remove(u))
}

/// One move of a pipeline with the presentation it produced.
#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub description: String,
    pub presentation: SurgeryPresentation,
}

fn nonzero(n: i64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument("n must be nonzero".into()))
    } else {
        Ok(())
    }
}

/// Shared replay for both pipelines: the figure-eight component `K` at
/// `-(4n+1)/n` or `-1/n`, an inserted `∞`-framed unknot `U` with the given
/// linking number, a `+1` twist along `U`, the isotopy exchanging which
/// component is unknotted, and the blow-down of `K`.
fn replay(start: Slope, lk: i64, n: i64) -> Result<Vec<Step>> {
    let mut steps = Vec::new();
    let p0 = SurgeryPresentation::new().with_component("K", start, false, &[])?;
    steps.push(Step { description: "figure-eight component K".into(), presentation: p0.clone() });
    let p1 = p0.with_component("U", ExactRational::infinity(), true, &[("K", lk)])?;
    steps.push(Step {
        description: format!("insert 1/0-framed unknot U with lk(U,K) = {lk}"),
        presentation: p1.clone(),
    });
    let p2 = rolfsen_twist(&p1, "U", 1)?;
    steps.push(Step { description: "twist once along U".into(), presentation: p2.clone() });
    let p3 = p2.set_unknotted("K", true)?.set_unknotted("U", false)?;
    steps.push(Step {
        description: "isotopy: K becomes an unknot, U the twisted knot".into(),
        presentation: p3.clone(),
    });
    let p4 = blow_down(&p3, "K")?;
    steps.push(Step { description: format!("blow down K (coefficient -1/{n})"), presentation: p4 });
    Ok(steps)
}

fn final_slope(steps: &[Step]) -> Slope {
    steps.last().expect("nonempty").presentation.coefficient("U").expect("U survives").clone()
}

/// Move trace taking `M_{4_1}(-(4n+1)/n)` to a surgery on `D_n`.
pub fn trace_d(n: i64) -> Result<Vec<Step>> {
    nonzero(n)?;
    replay(ExactRational::new(-(4 * n + 1), n)?, 2, n)
}

/// Move trace taking `M_{4_1}(-1/n)` to a surgery on `D'_n`.
pub fn trace_dprime(n: i64) -> Result<Vec<Step>> {
    nonzero(n)?;
    replay(ExactRational::new(-1, n)?, 0, n)
}

/// Final slope on `D_n`; equals `4n+1`.
pub fn pipeline_d(n: i64) -> Result<Slope> {
    Ok(final_slope(&trace_d(n)?))
}

/// Final slope on `D'_n`; equals `1`.
pub fn pipeline_dprime(n: i64) -> Result<Slope> {
    Ok(final_slope(&trace_dprime(n)?))
}

/// Exceptional slopes of the figure-eight knot: `0, 1/0, ±1, ±2, ±3, ±4`.
pub fn is_exceptional_41(s: &Slope) -> bool {
    s.is_infinite() || (s.is_integer() && s.numer().abs() <= BigInt::from(4))
}

/// `(slope on the knot, slope on 4_1)` with homeomorphic fillings.
pub fn shared_surgery(family: Family, n: i64) -> Result<(Slope, Slope)> {
    let excluded = match family {
        Family::D => n == 0 || n == -1,
        Family::DPrime => n == 0 || n.abs() == 1,
    };
    if excluded {
        return Err(Error::ExceptionalFilling(format!("n = {n} is excluded for this family")));
    }
    let (on_knot, on_41) = match family {
        Family::D => (ExactRational::from_int(4 * n + 1), ExactRational::new(-(4 * n + 1), n)?),
        Family::DPrime => (ExactRational::from_int(1), ExactRational::new(-1, n)?),
    };
    if is_exceptional_41(&on_41) {
        return Err(Error::ExceptionalFilling(format!("{on_41} is exceptional for 4_1")));
    }
    Ok((on_knot, on_41))
}
