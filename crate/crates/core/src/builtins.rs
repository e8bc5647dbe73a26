//! The built-in example towers and their standard maps.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::endo::{map_from_spec, LinMap, MapKind, MapSpec};
use crate::error::{Error, Result};
use crate::exact::{BaseAlgebra, Variable};
use crate::tower::{validate_tower, LevelSpec, Mutation, Tower, TowerSpec};

/// A validated tower with its named maps.
#[derive(Clone, Debug)]
pub struct System {
    pub tower: Tower,
    pub maps: BTreeMap<String, LinMap>,
}

impl System {
    pub fn map(&self, name: &str) -> Result<&LinMap> {
        self.maps
            .get(name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }
}

pub fn instantiate(spec: &TowerSpec) -> Result<System> {
    instantiate_with(spec, Mutation::None)
}

#[doc(hidden)]
pub fn instantiate_with(spec: &TowerSpec, mutation: Mutation) -> Result<System> {
    let mut tower = validate_tower(spec)?;
    if mutation != Mutation::None {
        tower = tower.with_mutation(mutation);
    }
    let maps = spec
        .maps
        .iter()
        .map(|(name, m)| Ok((name.clone(), map_from_spec(&tower, m)?)))
        .collect::<Result<_>>()?;
    Ok(System { tower, maps })
}

fn q_str(q: &BigRational) -> String {
    q.to_string()
}

fn nonzero(q: &BigRational) -> Result<()> {
    if q.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(())
    }
}

fn poly(vars: &[&str]) -> BaseAlgebra {
    BaseAlgebra::polynomial(vars.iter().map(|v| Variable::new(*v, false)))
}

/// The Weyl algebra `A_n`: variables `x`, `d` for `n = 1`, else `x1..xn`,
/// `d1..dn`.
pub fn weyl(n: usize) -> TowerSpec {
    let (xs, ds): (Vec<String>, Vec<String>) = if n == 1 {
        (vec!["x".into()], vec!["d".into()])
    } else {
        (1..=n).map(|i| (format!("x{i}"), format!("d{i}"))).unzip()
    };
    let xr: Vec<&str> = xs.iter().map(String::as_str).collect();
    let mut spec = TowerSpec::new(&format!("A{n}"), poly(&xr)).noetherian();
    for (x, d) in xs.iter().zip(&ds) {
        spec = spec.level(LevelSpec::new(d.clone()).delta(x, "1"));
    }
    let mut transpose = MapSpec::new(MapKind::AntiAutomorphism);
    for (x, d) in xs.iter().zip(&ds) {
        transpose = transpose.image(x, x).image(d, &format!("-{d}"));
    }
    let inverse = transpose.images.clone();
    transpose.inverse_images = Some(inverse);
    spec = spec.map("weyl_transpose", transpose);
    for (i, (x, d)) in xs.iter().zip(&ds).enumerate() {
        let mut ad = MapSpec::new(MapKind::Derivation);
        for (j, (y, e)) in xs.iter().zip(&ds).enumerate() {
            if i == j {
                ad = ad.image(y, y).image(e, &format!("-{e}"));
            } else {
                ad = ad.image(y, "0").image(e, "0");
            }
        }
        spec = spec.map(&format!("ad_{x}{d}"), ad);
    }
    if n == 1 {
        spec = spec.map(
            "shift_d",
            MapSpec::new(MapKind::Automorphism)
                .image("x", "x")
                .image("d", "d + 1")
                .inverse_image("x", "x")
                .inverse_image("d", "d - 1"),
        );
    }
    spec
}

/// `Q[x^±1][d; d/dx]`.
pub fn laurent_weyl() -> TowerSpec {
    TowerSpec::new("LW1", BaseAlgebra::polynomial([Variable::new("x", true)]))
        .noetherian()
        .level(LevelSpec::new("d").delta("x", "1"))
        .map(
            "ad_xd",
            MapSpec::new(MapKind::Derivation).image("x", "x").image("d", "-d"),
        )
        .map(
            "scale",
            MapSpec::new(MapKind::Automorphism)
                .image("x", "2*x")
                .image("d", "1/2*d")
                .inverse_image("x", "1/2*x")
                .inverse_image("d", "2*d"),
        )
        .map(
            "weyl_transpose",
            MapSpec::new(MapKind::AntiAutomorphism)
                .image("x", "x")
                .image("d", "-d")
                .inverse_image("x", "x")
                .inverse_image("d", "-d"),
        )
}

/// `Q(x)[d; d/dx]`.
pub fn rational_weyl() -> TowerSpec {
    TowerSpec::new("RW1", BaseAlgebra::rational_functions("x"))
        .noetherian()
        .level(LevelSpec::new("d").delta("x", "1"))
        .map(
            "ad_xd",
            MapSpec::new(MapKind::Derivation).image("x", "x").image("d", "-d"),
        )
        .map(
            "shift_d",
            MapSpec::new(MapKind::Automorphism)
                .image("x", "x")
                .image("d", "d + 1")
                .inverse_image("x", "x")
                .inverse_image("d", "d - 1"),
        )
        .map(
            "weyl_transpose",
            MapSpec::new(MapKind::AntiAutomorphism)
                .image("x", "x")
                .image("d", "-d")
                .inverse_image("x", "x")
                .inverse_image("d", "-d"),
        )
}

/// `Q[x][y; x ↦ qx]`, so `yx = qxy`.
pub fn quantum_plane(q: &BigRational) -> Result<TowerSpec> {
    nonzero(q)?;
    Ok(TowerSpec::new("QP", poly(&["x"]))
        .noetherian()
        .level(
            LevelSpec::new("y")
                .sigma("x", &format!("{}*x", q_str(q)))
                .sigma_inverse("x", &format!("{}*x", q_str(&q.recip()))),
        )
        .map(
            "swap",
            MapSpec::new(MapKind::AntiAutomorphism)
                .image("x", "y")
                .image("y", "x")
                .inverse_image("x", "y")
                .inverse_image("y", "x"),
        )
        .map(
            "euler_x",
            MapSpec::new(MapKind::Derivation).image("x", "x").image("y", "0"),
        )
        .map(
            "euler_y",
            MapSpec::new(MapKind::Derivation).image("x", "0").image("y", "y"),
        )
        .map(
            "scale_x",
            MapSpec::new(MapKind::Automorphism)
                .image("x", "3*x")
                .image("y", "y")
                .inverse_image("x", "1/3*x")
                .inverse_image("y", "y"),
        ))
}

/// The quantum torus on invertible `x`, `y` with `yx = qxy`.
pub fn quantum_torus(q: &BigRational) -> Result<TowerSpec> {
    nonzero(q)?;
    let (qs, qi) = (q_str(q), q_str(&q.recip()));
    Ok(TowerSpec::new("T2", BaseAlgebra::rationals())
        .noetherian()
        .level(LevelSpec::new("x").invertible())
        .level(
            LevelSpec::new("y")
                .invertible()
                .sigma("x", &format!("{qs}*x"))
                .sigma_inverse("x", &format!("{qi}*x")),
        )
        .map(
            "conj_x",
            MapSpec::new(MapKind::Automorphism)
                .image("x", "x")
                .image("y", &format!("{qi}*y"))
                .inverse_image("x", "x")
                .inverse_image("y", &format!("{qs}*y")),
        )
        .map(
            "conj_y",
            MapSpec::new(MapKind::Automorphism)
                .image("x", &format!("{qs}*x"))
                .image("y", "y")
                .inverse_image("x", &format!("{qi}*x"))
                .inverse_image("y", "y"),
        )
        .map(
            "euler_x",
            MapSpec::new(MapKind::Derivation).image("x", "x").image("y", "0"),
        )
        .map(
            "euler_y",
            MapSpec::new(MapKind::Derivation).image("x", "0").image("y", "y"),
        ))
}

/// `Q[x][s; x ↦ x + 1]`.
pub fn shift_algebra() -> TowerSpec {
    TowerSpec::new("S", poly(&["x"]))
        .noetherian()
        .level(LevelSpec::new("s").sigma("x", "x + 1").sigma_inverse("x", "x - 1"))
        .map(
            "euler_s",
            MapSpec::new(MapKind::Derivation).image("x", "0").image("s", "s"),
        )
        .map(
            "scale_s",
            MapSpec::new(MapKind::Automorphism)
                .image("x", "x")
                .image("s", "2*s")
                .inverse_image("x", "x")
                .inverse_image("s", "1/2*s"),
        )
        .map(
            "reflect",
            MapSpec::new(MapKind::AntiAutomorphism)
                .image("x", "-x")
                .image("s", "s")
                .inverse_image("x", "-x")
                .inverse_image("s", "s"),
        )
}

/// Enveloping algebra of the two-dimensional solvable Lie algebra,
/// `[h, e] = e`, as `Q[e][h; e d/de]`.
pub fn usolv2() -> TowerSpec {
    TowerSpec::new("usolv2", poly(&["e"]))
        .noetherian()
        .level(LevelSpec::new("h").delta("e", "e"))
        .map(
            "neg",
            MapSpec::new(MapKind::AntiAutomorphism)
                .image("e", "-e")
                .image("h", "-h")
                .inverse_image("e", "-e")
                .inverse_image("h", "-h"),
        )
        .map(
            "ad_h",
            MapSpec::new(MapKind::Derivation).image("e", "e").image("h", "0"),
        )
        .map(
            "scale_e",
            MapSpec::new(MapKind::Automorphism)
                .image("e", "2*e")
                .image("h", "h")
                .inverse_image("e", "1/2*e")
                .inverse_image("h", "h"),
        )
}

/// `Q[x^±1]` with the sign automorphism.
pub fn laurent_line() -> TowerSpec {
    TowerSpec::new("L", BaseAlgebra::polynomial([Variable::new("x", true)]))
        .noetherian()
        .map(
            "neg_x",
            MapSpec::new(MapKind::Automorphism)
                .image("x", "-x")
                .inverse_image("x", "-x"),
        )
        .map("euler", MapSpec::new(MapKind::Derivation).image("x", "x"))
}

/// `Q[x][d; sigma(x) = qx, delta(x) = 1]`, so `dx = qxd + 1`.
pub fn q_weyl(q: &BigRational) -> Result<TowerSpec> {
    nonzero(q)?;
    Ok(TowerSpec::new("QW", poly(&["x"]))
        .noetherian()
        .level(
            LevelSpec::new("d")
                .sigma("x", &format!("{}*x", q_str(q)))
                .sigma_inverse("x", &format!("{}*x", q_str(&q.recip())))
                .delta("x", "1"),
        )
        .map(
            "swap",
            MapSpec::new(MapKind::AntiAutomorphism)
                .image("x", "d")
                .image("d", "x")
                .inverse_image("x", "d")
                .inverse_image("d", "x"),
        )
        .map(
            "euler",
            MapSpec::new(MapKind::Derivation).image("x", "x").image("d", "-d"),
        ))
}

fn two() -> BigRational {
    BigRational::from_integer(2.into())
}

/// Every built-in, with default parameters.
pub fn catalog() -> Vec<TowerSpec> {
    vec![
        weyl(1),
        weyl(2),
        laurent_weyl(),
        rational_weyl(),
        quantum_plane(&two()).unwrap(),
        quantum_torus(&two()).unwrap(),
        shift_algebra(),
        usolv2(),
        laurent_line(),
        q_weyl(&two()).unwrap(),
    ]
}

pub fn names() -> Vec<String> {
    catalog().into_iter().filter_map(|s| s.name).collect()
}

pub fn builtin_spec(name: &str) -> Result<TowerSpec> {
    catalog()
        .into_iter()
        .find(|s| s.name.as_deref() == Some(name))
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

pub fn builtin(name: &str) -> Result<System> {
    instantiate(&builtin_spec(name)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_validates() {
        for spec in catalog() {
            let sys = instantiate(&spec).unwrap_or_else(|e| panic!("{:?}: {e}", spec.name));
            assert_eq!(sys.maps.len(), spec.maps.len());
        }
    }

    #[test]
    fn spec_json_round_trip() {
        for spec in catalog() {
            let back = TowerSpec::from_json(&spec.to_json()).unwrap();
            assert_eq!(back, spec);
        }
    }

    #[test]
    fn zero_parameter_rejected() {
        assert!(quantum_torus(&BigRational::zero()).is_err());
    }

    #[test]
    fn tower_to_spec_round_trip() {
        for spec in catalog() {
            let t = validate_tower(&spec).unwrap();
            let again = validate_tower(&t.to_spec()).unwrap();
            assert!(t.structurally_equal(&again), "{:?}", spec.name);
        }
    }
}
