//! Reference systems transcribed from the source listings, used as
//! golden fixtures by the verification battery and the acceptance suite.

use crate::field::Rat;
use crate::groebner::PolySystem;
use crate::poly::{parse_system_text, MonomialOrder, VarContext};
use crate::ratfunc::RatFunc;
use crate::symform::sym_ctx;

/// The five simplified relations for the surface (size 3).
pub const RELS_S_TEXT: &str = "
  {x12^2*x23 -x12*x13*x22 +x12*x13*x33 -x13^2*x23,
   x12*x23*x11 -x12*x23*x22 -x13^3 +x13*x23^2 -x13*x11*x22 +x13*x11*x33
                        +x13*x22^2 -x13*x22*x33,
   x12*x13*x11 -x12*x13*x22 -x13^2*x23 +x23^3 -x23*x11^2 +x23*x11*x22
                        +x23*x11*x33 -x23*x22*x33,
   x12^2*x11 -x12^2*x22 -x13^2*x11 +x13^2*x33 +x23^2*x22 -x23^2*x33 -x11^2*x22
                        +x11^2*x33 +x11*x22^2 -x11*x33^2 -x22^2*x33 +x22*x33^2,
   x12^3 -x12*x23^2 -x12*x11*x22 +x12*x11*x33 +x12*x22*x33 -x12*x33^2
                        -x13*x23*x11 +x13*x23*x33}
";

/// The four cubics of the trace-zero restriction (x11 eliminated).
pub const M0_EQS_TEXT: &str = "
 {x12*x23*x22 +(1/2)*x12*x23*x33 +(1/2)*x13^3 -(1/2)*x13*x23^2 -x13*x22^2
                                              +(1/2)*x13*x22*x33 +(1/2)*x13*x33^2,
  x12^2*x22 +(1/2)*x12^2*x33 -(1/2)*x13^2*x22 -x13^2*x33 -(1/2)*x23^2*x22
                  +(1/2)*x23^2*x33 +x22^3 +(3/2)*x22^2*x33 -(3/2)*x22*x33^2 -x33^3,
  x12^2*x23 +(3/2)*x12*x13*x33 -(1/2)*x13^2*x23 -(1/2)*x23^3 +x23*x22^2
                                                +(5/2)*x23*x22*x33 +x23*x33^2,
  x12^3 -x12*x23^2 +x12*x22^2 +x12*x22*x33 -2*x12*x33^2 +x13*x23*x22 +2*x13*x23*x33}
";

/// The orbit of diag(1,1,-2): one linear and four quadratic equations.
pub const ORBIT_EQS_TEXT: &str = "
  {x11 + x22 + x33,
   x23^2 - x22*x33 + x22 + x33 - 1,
   x13^2 + x22*x33 + x33^2 - x22 - 1,
   x12*x33 - x13*x23 - x12,
   x12^2 + x22^2 + x22*x33 - x33 - 1}
";

/// The 1-orbit system over the rational functions in the axis parameter.
pub const ONE_ORBIT_EQS_TEXT: &str = "
 { x11 + x33*k^2/(k^2+1) + (k^2-1)/(k^2+1),
   x22 + x33/(k^2+1) + (-k^2+1)/(k^2+1),
   x13 + k*x23,
   x12 - x33*k/(k^2+1) - 2*k/(k^2+1),
   x23^2 + x33^2/(k^2+1) + x33/(k^2+1) - 2/(k^2+1) }
";

/// Variables of the trace-zero restriction: x11 eliminated.
pub fn m0_ctx() -> VarContext {
    VarContext::new(vec!["x12", "x13", "x22", "x23", "x33"])
}

pub fn rels_s() -> PolySystem<Rat> {
    let ctx = sym_ctx(3);
    let gens = parse_system_text(RELS_S_TEXT, &ctx, MonomialOrder::GrevLex)
        .expect("fixture parses");
    PolySystem::new(ctx, MonomialOrder::GrevLex, gens)
}

pub fn m0_eqs() -> PolySystem<Rat> {
    let ctx = m0_ctx();
    let gens =
        parse_system_text(M0_EQS_TEXT, &ctx, MonomialOrder::GrevLex).expect("fixture parses");
    PolySystem::new(ctx, MonomialOrder::GrevLex, gens)
}

pub fn orbit_eqs() -> PolySystem<Rat> {
    let ctx = sym_ctx(3);
    let gens =
        parse_system_text(ORBIT_EQS_TEXT, &ctx, MonomialOrder::GrevLex).expect("fixture parses");
    PolySystem::new(ctx, MonomialOrder::GrevLex, gens)
}

pub fn one_orbit_eqs() -> PolySystem<RatFunc> {
    let ctx = sym_ctx(3);
    let gens = parse_system_text(ONE_ORBIT_EQS_TEXT, &ctx, MonomialOrder::GrevLex)
        .expect("fixture parses");
    PolySystem::new(ctx, MonomialOrder::GrevLex, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::numgeo::{conjugate, eval_poly_at, poly_scale, random_so, SymMatrixN};
    use crate::poly::parse_poly;

    #[test]
    fn fixtures_parse_with_expected_shapes() {
        assert_eq!(rels_s().len(), 5);
        assert_eq!(m0_eqs().len(), 4);
        assert_eq!(orbit_eqs().len(), 5);
        assert_eq!(one_orbit_eqs().len(), 5);
        for p in rels_s().gens() {
            assert_eq!(p.total_degree(), Some(3));
            assert!(p.is_homogeneous());
        }
        for p in m0_eqs().gens() {
            assert_eq!(p.total_degree(), Some(3));
        }
    }

    #[test]
    fn m0_second_member_clears_to_integer_form() {
        // doubling the fractional member gives the primitive integer form
        let sys = m0_eqs();
        let p = &sys.gens()[1];
        assert_eq!(p.terms().iter().filter(|(_, c)| *c == rat(1, 2)).count(), 2);
        let doubled = p.scale(&rat(2, 1));
        assert_eq!(p.normalize_primitive(), doubled.normalize_primitive());
        let int_form = parse_poly::<Rat>(
            "2*x12^2*x22 +x12^2*x33 -x13^2*x22 -2*x13^2*x33 -x23^2*x22
             +x23^2*x33 +2*x22^3 +3*x22^2*x33 -3*x22*x33^2 -2*x33^3",
            sys.ctx(),
            sys.order(),
        )
        .unwrap();
        assert_eq!(p.normalize_primitive(), int_form.normalize_primitive());
    }

    #[test]
    fn fixtures_vanish_on_sampled_orbit_points() {
        // every golden member vanishes at conjugates of diag(1,1,-2)
        let d = SymMatrixN::diag(&[1.0, 1.0, -2.0]);
        for seed in 0..50u64 {
            let x = conjugate(&random_so(3, seed), &d);
            for p in rels_s().gens().iter().chain(orbit_eqs().gens()) {
                let v = eval_poly_at(p, &x);
                assert!(v.abs() < 1e-9 * poly_scale(p), "residual {v}");
            }
        }
    }
}
