//! Forgetting a marking on one vertex by literal rewriting.
//!
//! Upstairs classes are rewritten in the symbols `ψ_m` (the forgotten
//! marking), `ψ̄_h`, `D_h` and `κ̄_c` with
//! `κ_c = κ̄_c + ψ_m^c`, `ψ_h = ψ̄_h + D_h`,
//! `D_h D_h' = 0`, `D_h ψ_m = 0`, `D_h^2 = -D_h ψ̄_h`, and then pushed down by
//! `π_*(ψ_m^{b+1} X̄) = κ_b X̄` (`κ_0 = 2g - 2 + n`), `π_*(D_h X̄) = X̄` and
//! `π_*(X̄) = 0`.

use std::collections::BTreeMap;

use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Sym {
    m: u32,
    d: Option<usize>,
    psibar: Vec<u32>,
    kappabar: Vec<u32>,
}

type Poly = BTreeMap<Sym, Rational>;

enum Factor {
    PsiM,
    D(usize),
    PsiBar(usize),
    KappaBar(u32),
}

fn times(p: &Poly, f: &Factor) -> Poly {
    let mut out = Poly::new();
    for (s, c) in p {
        let mut s = s.clone();
        let mut c = c.clone();
        match *f {
            Factor::PsiM => {
                if s.d.is_some() {
                    continue;
                }
                s.m += 1;
            }
            Factor::D(h) => match s.d {
                _ if s.m > 0 => continue,
                Some(h2) if h2 != h => continue,
                Some(_) => {
                    s.psibar[h] += 1;
                    c = -c;
                }
                None => s.d = Some(h),
            },
            Factor::PsiBar(h) => s.psibar[h] += 1,
            Factor::KappaBar(k) => {
                s.kappabar.push(k);
                s.kappabar.sort_unstable();
            }
        }
        *out.entry(s).or_insert_with(|| Rational::from_integer(0.into())) += c;
    }
    out.retain(|_, c| *c != Rational::from_integer(0.into()));
    out
}

fn add(a: Poly, b: Poly) -> Poly {
    let mut out = a;
    for (s, c) in b {
        *out.entry(s).or_insert_with(|| Rational::from_integer(0.into())) += c;
    }
    out.retain(|_, c| *c != Rational::from_integer(0.into()));
    out
}

/// Result of `π_*(ψ_m^{psi_m} Π ψ_h^{psi[h]} Π κ_{kappa[j]})` on a vertex of
/// genus `g` whose image keeps `psi.len()` half-edges, as a map from
/// `(ψ̄ exponents, sorted κ̄ indices)` to coefficients.
pub fn forget_vertex(g: u32, psi_m: u32, psi: &[u32], kappa: &[u32]) -> BTreeMap<(Vec<u32>, Vec<u32>), Rational> {
    let n = psi.len();
    let one = Sym { m: 0, d: None, psibar: vec![0; n], kappabar: vec![] };
    let mut p: Poly = BTreeMap::from([(one, Rational::from_integer(1.into()))]);
    for _ in 0..psi_m {
        p = times(&p, &Factor::PsiM);
    }
    for (h, &b) in psi.iter().enumerate() {
        for _ in 0..b {
            p = add(times(&p, &Factor::PsiBar(h)), times(&p, &Factor::D(h)));
        }
    }
    for &c in kappa {
        let mut top = p.clone();
        for _ in 0..c {
            top = times(&top, &Factor::PsiM);
        }
        p = add(times(&p, &Factor::KappaBar(c)), top);
    }
    let chi = 2 * g as i64 - 2 + n as i64;
    let mut out = BTreeMap::new();
    for (s, c) in p {
        let (kappa, c) = match (s.m, s.d) {
            (0, Some(_)) => (s.kappabar, c),
            (0, None) => continue,
            (1, None) => (s.kappabar, c * Rational::from_integer(chi.into())),
            (m, None) => {
                let mut k = s.kappabar;
                k.push(m - 1);
                k.sort_unstable();
                (k, c)
            }
            (_, Some(_)) => unreachable!("D kills ψ_m"),
        };
        *out.entry((s.psibar, kappa)).or_insert_with(|| Rational::from_integer(0.into())) += c;
    }
    out.retain(|_, c| *c != Rational::from_integer(0.into()));
    out
}
