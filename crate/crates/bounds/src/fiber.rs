use crate::BoundsError;

/// Lower bound for `chi_top(F') + 2g - 2` over a singular fiber of a
/// constant-moduli fibration of genus `g`.
pub fn singular_fiber_floor(g: u64, is_double_curve_of_half_genus: bool) -> Result<u64, BoundsError> {
    if g < 2 {
        return Err(BoundsError::Precondition(format!("genus must be at least 2, got {g}")));
    }
    let floor = if is_double_curve_of_half_genus {
        if g % 2 == 0 {
            return Err(BoundsError::Precondition(format!("a double curve of genus (g+1)/2 needs g odd, got {g}")));
        }
        g - 1
    } else {
        g + 2
    };
    // At least 4 except for double curves of genus 2.
    assert!(floor >= 4 || (g == 3 && is_double_curve_of_half_genus));
    Ok(floor)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floors() {
        assert_eq!(singular_fiber_floor(3, true), Ok(2));
        assert_eq!(singular_fiber_floor(3, false), Ok(5));
        assert_eq!(singular_fiber_floor(2, false), Ok(4));
        assert_eq!(singular_fiber_floor(5, true), Ok(4));
        assert!(singular_fiber_floor(4, true).is_err());
        assert!(singular_fiber_floor(1, false).is_err());
    }
}
