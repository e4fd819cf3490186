use crate::error::{Error, Result};
use crate::scalar::CRational;
use crate::star_poly::{Link, Mode, Presentation, StarPoly};

/// Resolves `pair` (either member) to `(z, adj z)` and checks that no
/// relation mentions them.
fn free_pair(pres: &Presentation, pair: usize) -> Result<(usize, usize)> {
    if pres.mode() != Mode::Star {
        return Err(Error::NoInvolution);
    }
    let g = pres
        .generators()
        .get(pair)
        .ok_or_else(|| Error::InvalidArgument(format!("no generator with index {pair}")))?;
    let partner = match g.link {
        Link::Partner(p) => p,
        _ => {
            return Err(Error::Unsupported(format!(
                "`{}` is not part of a free generator pair",
                g.display_name()
            )))
        }
    };
    let (z, zbar) = if g.adjoint {
        (partner, pair)
    } else {
        (pair, partner)
    };
    let touches = pres.rules().iter().any(|r| {
        std::iter::once(&r.lead)
            .chain(r.tail.keys())
            .any(|m| m.exponents()[z] > 0 || m.exponents()[zbar] > 0)
    });
    if touches {
        return Err(Error::Unsupported(format!(
            "relations involve `{}`",
            pres.generators()[z].display_name()
        )));
    }
    Ok((z, zbar))
}

/// Formal derivative `∂/∂z*` with respect to the adjoint of the free pair
/// containing generator `pair`.
pub fn wirtinger_dzbar(a: &StarPoly, pair: usize) -> Result<StarPoly> {
    let pres = a.presentation();
    let (_, zbar) = free_pair(pres, pair)?;
    let terms = a.terms().iter().filter_map(|(m, c)| {
        let e = m.exponents()[zbar];
        (e > 0).then(|| {
            (
                m.with_exponent(zbar, e - 1),
                c * &CRational::from_int(e as i64),
            )
        })
    });
    StarPoly::from_terms(pres, terms.collect::<Vec<_>>())
}

/// Whether `a` lies in the kernel of [`wirtinger_dzbar`], that is, uses no
/// power of the adjoint generator.
pub fn is_holomorphic_image(a: &StarPoly, pair: usize) -> Result<bool> {
    Ok(wirtinger_dzbar(a, pair)?.is_zero())
}
