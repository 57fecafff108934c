use serde::Deserialize;

use crate::error::{Error, Result};
use crate::formula::builders::{delta_matrix, delta_names};
use crate::formula::{cut_formula, parse_with_params, Formula, Term};

/// An existential "equation" with parameter slots.
///
/// The schema asks: for parameters satisfying `guard`, is there a tuple of
/// witnesses making `matrix` true? Any quantifiers inside the matrix are
/// evaluated in the ambient lattice, so a sublattice is absolute for the
/// schema exactly when the Tarski–Vaught test passes for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    name: String,
    params: Vec<String>,
    witnesses: Vec<String>,
    matrix: Formula,
    guard: Option<Formula>,
}

impl Schema {
    /// `formula` must start with an existential block; its parameters must
    /// be among `params`. The guard must be quantifier-free.
    pub fn new(
        name: &str,
        params: &[&str],
        formula: Formula,
        guard: Option<Formula>,
    ) -> Result<Schema> {
        formula.check_well_formed()?;
        formula.check_params(params)?;
        let (witnesses, matrix) = formula.existential_block();
        if witnesses.is_empty() {
            return Err(Error::input(format!(
                "schema `{name}` must start with an existential quantifier"
            )));
        }
        if let Some(g) = &guard {
            if !g.is_quantifier_free() {
                return Err(Error::input(format!(
                    "guard of schema `{name}` has quantifiers"
                )));
            }
            g.check_params(params)?;
        }
        if let Some(w) = witnesses.iter().find(|w| params.contains(&w.as_str())) {
            return Err(Error::input(format!(
                "witness `{w}` of schema `{name}` shadows a parameter"
            )));
        }
        Ok(Schema {
            name: name.to_string(),
            params: params.iter().map(|s| s.to_string()).collect(),
            matrix: matrix.clone(),
            witnesses,
            guard,
        })
    }

    /// Schema as written in a family file: the matrix after the existential
    /// block must be quantifier-free.
    pub fn from_text(
        name: &str,
        params: &[&str],
        formula: &str,
        guard: Option<&str>,
    ) -> Result<Schema> {
        let f = parse_with_params(formula, params)?;
        let (_, matrix) = f.existential_block();
        if !matrix.is_quantifier_free() {
            return Err(Error::input(format!(
                "schema `{name}`: nested quantifiers after the existential block are not allowed in family files"
            )));
        }
        let guard = guard.map(|g| parse_with_params(g, params)).transpose()?;
        Schema::new(name, params, f, guard)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn witnesses(&self) -> &[String] {
        &self.witnesses
    }

    pub fn matrix(&self) -> &Formula {
        &self.matrix
    }

    pub fn guard(&self) -> Option<&Formula> {
        self.guard.as_ref()
    }

    /// The full schema formula `∃w… matrix`.
    pub fn formula(&self) -> Formula {
        Formula::exists_many(&self.witnesses, self.matrix.clone())
    }
}

fn var(s: &str) -> Term {
    Term::var(s)
}

/// `a ≰ b` ⟹ `∃c (c ≤ a ∧ c ≠ 0 ∧ c ⊓ b = 0)`.
pub fn separativity() -> Schema {
    Schema::from_text(
        "separativity",
        &["a", "b"],
        "E c. (c <= a) & !(c = 0) & (c ^ b = 0)",
        Some("!(a <= b)"),
    )
    .expect("built-in schema")
}

/// `a ⊓ b = 0` ⟹ `∃f∃g (a ⊓ f = 0 ∧ b ⊓ g = 0 ∧ f ⊔ g = 1)`.
pub fn normality() -> Schema {
    Schema::from_text(
        "normality",
        &["a", "b"],
        "E f. E g. (a ^ f = 0) & (b ^ g = 0) & (f v g = 1)",
        Some("a ^ b = 0"),
    )
    .expect("built-in schema")
}

/// The inner existential block of the covering-dimension formula, with the
/// `x`s as parameters.
pub fn delta_witness(n: usize) -> Schema {
    let (xs, ys) = delta_names(n);
    let params: Vec<&str> = xs.iter().map(String::as_str).collect();
    let guard = Term::meet_all(xs.iter().map(|x| var(x))).is_zero();
    Schema::new(
        &format!("delta{n}-witness"),
        &params,
        Formula::exists_many(&ys, delta_matrix(&xs, &ys)),
        Some(guard),
    )
    .expect("built-in schema")
}

/// The negation of the covering-dimension formula as an existential
/// equation without parameters: a tuple with empty meet that cannot be
/// swelled to a cover.
pub fn delta_counterexample(n: usize) -> Schema {
    let (xs, ys) = delta_names(n);
    let meet_zero = Term::meet_all(xs.iter().map(|x| var(x))).is_zero();
    let no_swelling = Formula::exists_many(&ys, delta_matrix(&xs, &ys)).not();
    Schema::new(
        &format!("delta{n}-counterexample"),
        &[],
        Formula::exists_many(&xs, meet_zero.and(no_swelling)),
        None,
    )
    .expect("built-in schema")
}

/// A partition between `x` and `y` inside `a`, with its two sides.
pub fn partition_witness() -> Schema {
    Schema::from_text(
        "partition",
        &["x", "y", "a"],
        "E u. E f. E g. x ^ f = 0 & y ^ g = 0 & f v g = a & f ^ g = u",
        Some("x <= a & y <= a & x ^ y = 0"),
    )
    .expect("built-in schema")
}

/// A cut between `x` and `y` inside `a`. The matrix quantifies over
/// connected elements, so it is evaluated in the ambient lattice.
pub fn cut_witness() -> Schema {
    let cut = cut_formula();
    Schema::new(
        "cut",
        &["x", "y", "a"],
        Formula::exists("u", cut),
        Some(parse_with_params("x <= a & y <= a & x ^ y = 0", &["x", "y", "a"]).expect("guard")),
    )
    .expect("built-in schema")
}

/// A disconnected element splits into two nonzero disjoint pieces. No
/// guard: the matrix itself says `a` is not connected.
pub fn disconnection_witness() -> Schema {
    Schema::new(
        "disconnection",
        &["a"],
        parse_with_params(
            "E f. E g. f ^ g = 0 & f v g = a & !(f = 0) & !(g = 0)",
            &["a"],
        )
        .expect("schema"),
        None,
    )
    .expect("built-in schema")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaFamily {
    pub schemas: Vec<Schema>,
}

#[derive(Deserialize)]
struct SchemaEntry {
    name: String,
    #[serde(default)]
    params: Vec<String>,
    formula: String,
    #[serde(default)]
    guard: Option<String>,
}

impl FormulaFamily {
    pub fn new(schemas: Vec<Schema>) -> Self {
        FormulaFamily { schemas }
    }

    /// Separativity, normality and the δ₀ witness schema.
    pub fn standard() -> Self {
        FormulaFamily::new(vec![separativity(), normality(), delta_witness(0)])
    }

    /// Reads a JSON list of `{"name", "params", "formula", "guard"}` objects.
    pub fn from_json(text: &str) -> Result<Self> {
        let entries: Vec<SchemaEntry> = serde_json::from_str(text)
            .map_err(|e| Error::input(format!("malformed family file: {e}")))?;
        let schemas = entries
            .iter()
            .map(|e| {
                let params: Vec<&str> = e.params.iter().map(String::as_str).collect();
                Schema::from_text(&e.name, &params, &e.formula, e.guard.as_deref())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FormulaFamily::new(schemas))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_file_parses() {
        let fam = FormulaFamily::from_json(
            r#"[{"name":"separativity","params":["a","b"],"formula":"E c. (c <= a) & !(c = 0) & (c ^ b = 0)","guard":"!(a <= b)"}]"#,
        )
        .unwrap();
        assert_eq!(fam.schemas, vec![separativity()]);
    }

    #[test]
    fn family_file_rejects_nested_quantifiers() {
        let err = FormulaFamily::from_json(
            r#"[{"name":"bad","params":["a"],"formula":"E c. A d. d <= c"}]"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("nested"), "{err}");
    }

    #[test]
    fn schema_errors() {
        assert!(Schema::from_text("x", &["a"], "a = 0", None).is_err());
        assert_eq!(
            Schema::from_text("x", &["a"], "E c. c <= b", None).unwrap_err(),
            Error::UnboundVariable("b".into())
        );
        assert!(Schema::from_text("x", &["a"], "E c. c <= a", Some("E d. d = a")).is_err());
    }

    #[test]
    fn builtins_have_expected_shape() {
        let d = delta_witness(1);
        assert_eq!(d.params(), ["x1", "x2", "x3"]);
        assert_eq!(d.witnesses(), ["y1", "y2", "y3"]);
        assert!(delta_counterexample(0).params().is_empty());
        assert_eq!(cut_witness().witnesses(), ["u"]);
        assert_eq!(partition_witness().witnesses(), ["u", "f", "g"]);
        assert_eq!(disconnection_witness().params(), ["a"]);
    }
}
