use serde::Serialize;

use super::PfSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// All finite singular points (critical values) are Fuchsian; equivalent
    /// to `A` being diagonalizable.
    pub finite_fuchsian: bool,
    /// `B1 = 0`, so the system is Fuchsian at infinity in its given form.
    pub infinity_fuchsian_form: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

pub fn classify_singularities(sys: &PfSystem) -> Classification {
    let mut details = Vec::new();
    let finite_fuchsian = match sys.a.min_poly() {
        Ok(m) => {
            let ok = m.is_squarefree();
            if !ok {
                details.push(format!("minimal polynomial of A has a repeated factor: {m}"));
            }
            ok
        }
        Err(e) => {
            details.push(format!("minimal polynomial failed: {e}"));
            false
        }
    };
    let infinity_fuchsian_form = sys.b1.is_zero();
    if !infinity_fuchsian_form {
        let nonzero = (0..sys.mu())
            .flat_map(|i| (0..sys.mu()).map(move |j| (i, j)))
            .filter(|&(i, j)| !num_traits::Zero::is_zero(&sys.b1[(i, j)]))
            .count();
        details.push(format!("B1 has {nonzero} nonzero entries; pole of order 2 at infinity"));
    }
    Classification {
        finite_fuchsian,
        infinity_fuchsian_form,
        details,
    }
}
