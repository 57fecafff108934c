//! The dimension formulas.
//!
//! * `delta(n)`: every `n+2` closed sets with empty meet swell to a cover
//!   by `n+2` closed sets with empty meet (covering dimension `≤ n`).
//! * `part(u,x,y,a)` / `ind(n)`: `u` is a partition between `x` and `y`
//!   inside `a`; `I_n(a)` recursively asks for partitions with `I_{n-1}`.
//! * `conn(a)` / `cut(u,x,y,a)` / `dg(n)`: lattice-connectedness, cuts
//!   that meet every connected element joining `x` to `y`, and the
//!   Dimensionsgrad recursion `Δ_n(a)`.
//!
//! The recursions are unrolled by substitution, so the results are ordinary
//! first-order formulas. Bound variables carry the recursion level as a
//! suffix (`x1`, `u0`, ...) so inlined copies never capture each other.
//! `v` is the join operator in the concrete syntax, hence the cut quantifier
//! is called `w`.

use super::ast::{Formula, Term};
use crate::config::Bounds;
use crate::error::{Error, Result};

fn var(s: &str) -> Term {
    Term::var(s)
}

fn check_delta(n: usize, bounds: &Bounds) -> Result<()> {
    if n > bounds.max_delta_n {
        return Err(Error::resource(format!(
            "covering-dimension formula for n = {n} exceeds bound {}",
            bounds.max_delta_n
        )));
    }
    Ok(())
}

fn check_recursive(n: i32, bounds: &Bounds) -> Result<()> {
    if n < -1 {
        return Err(Error::input(format!("dimension index {n} is below -1")));
    }
    if n > bounds.max_recursive_n {
        return Err(Error::resource(format!(
            "recursion depth {n} exceeds bound {}",
            bounds.max_recursive_n
        )));
    }
    Ok(())
}

/// The matrix of the covering-dimension formula for the given names.
pub fn delta_matrix<S: AsRef<str>>(xs: &[S], ys: &[S]) -> Formula {
    let x = |i: usize| var(xs[i].as_ref());
    let y = |i: usize| var(ys[i].as_ref());
    let k = xs.len();
    Formula::and_all((0..k).map(|i| x(i).le(y(i))).chain([
        Term::meet_all((0..k).map(y)).is_zero(),
        Term::join_all((0..k).map(y)).equals(Term::One),
    ]))
}

pub fn delta_names(n: usize) -> (Vec<String>, Vec<String>) {
    let xs = (1..=n + 2).map(|i| format!("x{i}")).collect();
    let ys = (1..=n + 2).map(|i| format!("y{i}")).collect();
    (xs, ys)
}

/// `∀x1…x_{n+2} ∃y1…y_{n+2} [(⊓xi = 0) → (⋀ xi ≤ yi) ∧ (⊓yi = 0) ∧ (⊔yi = 1)]`.
pub fn delta_formula(n: usize) -> Result<Formula> {
    delta_formula_with(n, &Bounds::default())
}

pub fn delta_formula_with(n: usize, bounds: &Bounds) -> Result<Formula> {
    check_delta(n, bounds)?;
    let (xs, ys) = delta_names(n);
    let antecedent = Term::meet_all(xs.iter().map(|x| var(x))).is_zero();
    let body = Formula::exists_many(&ys, antecedent.implies(delta_matrix(&xs, &ys)));
    Ok(Formula::forall_many(&xs, body))
}

fn part_at(u: Term, x: Term, y: Term, a: Term, tag: &str) -> Formula {
    let f = format!("f{tag}");
    let g = format!("g{tag}");
    Formula::exists(
        &f,
        Formula::exists(
            &g,
            Formula::and_all([
                x.meet(var(&f)).is_zero(),
                y.meet(var(&g)).is_zero(),
                var(&f).join(var(&g)).equals(a),
                var(&f).meet(var(&g)).equals(u),
            ]),
        ),
    )
}

/// `part(u,x,y,a) = ∃f∃g (x⊓f=0 ∧ y⊓g=0 ∧ f⊔g=a ∧ f⊓g=u)`.
pub fn part_formula() -> Formula {
    part_at(var("u"), var("x"), var("y"), var("a"), "")
}

fn level_body(
    n: i32,
    a: Term,
    witness: &dyn Fn(Term, Term, Term, Term, &str) -> Formula,
) -> Formula {
    if n < 0 {
        return a.is_zero();
    }
    let tag = n.to_string();
    let (x, y, u) = (format!("x{tag}"), format!("y{tag}"), format!("u{tag}"));
    let guard = Formula::and_all([
        var(&x).le(a.clone()),
        var(&y).le(a.clone()),
        var(&x).meet(var(&y)).is_zero(),
    ]);
    let goal = witness(var(&u), var(&x), var(&y), a, &tag).and(level_body(n - 1, var(&u), witness));
    Formula::forall(
        &x,
        Formula::forall(&y, Formula::exists(&u, guard.implies(goal))),
    )
}

/// `I_n(a)` with the parameter `a`; `I_{-1}(a)` is `a = 0`.
pub fn ind_formula(n: i32) -> Result<Formula> {
    ind_formula_with(n, &Bounds::default())
}

pub fn ind_formula_with(n: i32, bounds: &Bounds) -> Result<Formula> {
    check_recursive(n, bounds)?;
    Ok(level_body(n, var("a"), &part_at))
}

fn conn_at(a: Term, s: &str, t: &str) -> Formula {
    let split = var(s)
        .meet(var(t))
        .is_zero()
        .and(var(s).join(var(t)).equals(a.clone()));
    let trivial = var(s).is_zero().or(var(s).equals(a));
    Formula::forall(s, Formula::forall(t, split.implies(trivial)))
}

/// `conn(a) = ∀x∀y [(x⊓y=0 ∧ x⊔y=a) → (x=0 ∨ x=a)]`.
pub fn conn_formula() -> Formula {
    conn_at(var("a"), "x", "y")
}

fn cut_at(u: Term, x: Term, y: Term, a: Term, tag: &str, exclude_top: bool) -> Formula {
    let w = format!("w{tag}");
    let mut hyp = vec![var(&w).le(a)];
    if exclude_top {
        hyp.push(var(&w).equals(Term::One).not());
    }
    hyp.extend([
        conn_at(var(&w), &format!("s{tag}"), &format!("t{tag}")),
        var(&w).meet(x).is_zero().not(),
        var(&w).meet(y).is_zero().not(),
    ]);
    Formula::forall(
        &w,
        Formula::and_all(hyp).implies(var(&w).meet(u).is_zero().not()),
    )
}

/// `cut(u,x,y,a) = ∀w [(w≤a ∧ conn(w) ∧ w⊓x≠0 ∧ w⊓y≠0) → w⊓u≠0]`.
pub fn cut_formula() -> Formula {
    cut_at(var("u"), var("x"), var("y"), var("a"), "", false)
}

/// `Δ_n(a)` with the parameter `a`; `Δ_{-1}(a)` is `a = 0`.
pub fn dg_formula(n: i32) -> Result<Formula> {
    dg_formula_with(n, &Bounds::default())
}

pub fn dg_formula_with(n: i32, bounds: &Bounds) -> Result<Formula> {
    check_recursive(n, bounds)?;
    Ok(level_body(n, var("a"), &|u, x, y, a, tag| {
        cut_at(u, x, y, a, tag, false)
    }))
}

/// `Δ_n(a)` in which the cut condition only consults connected elements
/// other than the top. Used to contrast the two readings of "non-trivial
/// connected element" in bounded interval samples.
pub fn dg_formula_excluding_top(n: i32) -> Result<Formula> {
    check_recursive(n, &Bounds::default())?;
    Ok(level_body(n, var("a"), &|u, x, y, a, tag| {
        cut_at(u, x, y, a, tag, true)
    }))
}

/// Instantiates the parameter `a` of `ind`/`dg`/`conn` at the top element.
pub fn at_top(f: &Formula) -> Formula {
    f.substitute("a", &Term::One)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn delta_zero_text() {
        assert_eq!(
            delta_formula(0).unwrap().to_string(),
            "A x1. A x2. E y1. E y2. x1 ^ x2 = 0 -> x1 <= y1 & x2 <= y2 & y1 ^ y2 = 0 & y1 v y2 = 1"
        );
    }

    #[test]
    fn part_and_conn_text() {
        assert_eq!(
            part_formula().to_string(),
            "E f. E g. x ^ f = 0 & y ^ g = 0 & f v g = a & f ^ g = u"
        );
        assert_eq!(
            conn_formula().to_string(),
            "A x. A y. x ^ y = 0 & x v y = a -> x = 0 | x = a"
        );
        assert_eq!(
            cut_formula().to_string(),
            "A w. w <= a & (A s. A t. s ^ t = 0 & s v t = w -> s = 0 | s = w) & !w ^ x = 0 & !w ^ y = 0 -> !w ^ u = 0"
        );
    }

    #[test]
    fn minus_one_is_zero_test() {
        assert_eq!(ind_formula(-1).unwrap(), parse("a = 0").unwrap());
        assert_eq!(dg_formula(-1).unwrap(), parse("a = 0").unwrap());
    }

    #[test]
    fn bounds_enforced() {
        assert!(delta_formula(5).unwrap_err().is_resource());
        assert!(ind_formula(3).unwrap_err().is_resource());
        assert!(dg_formula(3).unwrap_err().is_resource());
        assert!(matches!(ind_formula(-2), Err(Error::Input(_))));
    }

    #[test]
    fn recursive_formulas_are_well_formed_and_reparse() {
        for n in -1..=2 {
            for f in [ind_formula(n).unwrap(), dg_formula(n).unwrap()] {
                f.check_well_formed().unwrap();
                assert_eq!(f.params().into_iter().collect::<Vec<_>>(), vec!["a"]);
                assert_eq!(parse(&f.to_string()).unwrap(), f);
                let top = at_top(&f);
                assert!(top.params().is_empty());
            }
        }
        for n in 0..=4 {
            let f = delta_formula(n).unwrap();
            assert_eq!(parse(&f.to_string()).unwrap(), f);
            assert!(f.params().is_empty());
        }
    }
}
