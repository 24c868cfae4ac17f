use super::{Field, FieldElement, FieldError};

/// All roots of `poly` (coefficients in ascending degree) inside `search`,
/// found by evaluating at every element. Sorted in canonical order.
pub fn find_roots(poly: &[FieldElement], search: Field) -> Result<Vec<FieldElement>, FieldError> {
    let Some(first) = poly.first() else {
        return Err(FieldError::ZeroPolynomial);
    };
    let base = first.field();
    let coeffs = poly
        .iter()
        .map(|c| {
            if c.field() != base {
                return Err(FieldError::FieldMismatch {
                    left: base.degree(),
                    right: c.field().degree(),
                });
            }
            c.embed(search)
        })
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.iter().all(FieldElement::is_zero) {
        return Err(FieldError::ZeroPolynomial);
    }
    Ok(search
        .elements()
        .filter(|&r| horner(&coeffs, r).is_zero())
        .collect())
}

fn horner(coeffs: &[FieldElement], at: FieldElement) -> FieldElement {
    coeffs
        .iter()
        .rev()
        .fold(at.field().zero(), |acc, &c| acc * at + c)
}
