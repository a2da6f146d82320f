//! Exhaustive checker for the thirteen law families of a bicategory
//! presentation.
//!
//! Law tags are stable strings `law12` … `law24`:
//!
//! * `law12:vcomp-unit-assoc` — identity and associativity of •
//! * `law13:lwhisker-functorial` — f◁id₂ = id₂, f◁(θ•γ) = (f◁θ)•(f◁γ)
//! * `law14:rwhisker-functorial` — id₂▷g = id₂, (θ•γ)▷g = (θ▷g)•(γ▷g)
//! * `law15:lunitor-natural` — (id₁◁θ)•λ(g) = λ(f)•θ
//! * `law16:runitor-natural` — (θ▷id₁)•ρ(g) = ρ(f)•θ
//! * `law17:assoc-natural-inner` — (f◁(g◁θ))•α(f,g,i) = α(f,g,h)•((f·g)◁θ)
//! * `law18:assoc-natural-middle` — (f◁(θ▷i))•α(f,h,i) = α(f,g,i)•((f◁θ)▷i)
//! * `law19:assoc-natural-outer` — (θ▷(h·i))•α(g,h,i) = α(f,h,i)•((θ▷h)▷i)
//! * `law20:lunitor-inverse`, `law21:runitor-inverse`, `law22:assoc-inverse`
//! * `law23:triangle` — α(f,id₁(b),g)•(ρ(f)▷g) = f◁λ(g)
//! * `law24:pentagon`
//!
//! The triangle follows the diagram of the source definition (λ applied to
//! the right factor g); the equation text there carries a typo.

use super::BicatPresentation;
use crate::budget::Budget;
use crate::cell::CellId;
use crate::error::Result;
use crate::report::{LawReport, Violation};

pub const LAW_TAGS: [&str; 13] = [
    "law12:vcomp-unit-assoc",
    "law13:lwhisker-functorial",
    "law14:rwhisker-functorial",
    "law15:lunitor-natural",
    "law16:runitor-natural",
    "law17:assoc-natural-inner",
    "law18:assoc-natural-middle",
    "law19:assoc-natural-outer",
    "law20:lunitor-inverse",
    "law21:runitor-inverse",
    "law22:assoc-inverse",
    "law23:triangle",
    "law24:pentagon",
];

struct LawCheck<'a> {
    p: &'a BicatPresentation,
    budget: &'a Budget,
    violations: Vec<Violation>,
}

impl<'a> LawCheck<'a> {
    fn record(&mut self, law: &str, cells: &[&CellId], lhs: Result<CellId>, rhs: Result<CellId>) {
        let show = |r: &Result<CellId>| match r {
            Ok(c) => c.to_string(),
            Err(e) => format!("<{e}>"),
        };
        let equal = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
        if !equal {
            self.violations.push(Violation::new(
                law,
                cells.iter().map(|c| (*c).clone()).collect(),
                show(&lhs),
                show(&rhs),
            ));
        }
    }

    fn charge(&self, law: &str) -> Result<()> {
        self.budget.charge(law, 1)
    }

    /// law12: id₂(f)•θ = θ, θ•id₂(g) = θ, θ•(γ•τ) = (θ•γ)•τ.
    fn vcomp_unit_assoc(&mut self) -> Result<()> {
        let p = self.p;
        for (t, tc) in &p.two_cells {
            self.charge("law12")?;
            let lhs = p
                .id2(&tc.src)
                .and_then(|i| p.vcomp(i, t)).cloned();
            self.record("law12:vcomp-unit-assoc", &[t], lhs, Ok(t.clone()));
            let rhs = p
                .id2(&tc.tgt)
                .and_then(|i| p.vcomp(t, i)).cloned();
            self.record("law12:vcomp-unit-assoc", &[t], rhs, Ok(t.clone()));
        }
        for (t, u) in p.vcomposable_pairs() {
            let utgt = p.two_cell(&u)?.tgt.clone();
            for (w, wc) in &p.two_cells {
                if wc.src != utgt {
                    continue;
                }
                self.charge("law12")?;
                let lhs = p
                    .vcomp(&u, w)
                    .and_then(|uw| p.vcomp(&t, uw)).cloned();
                let rhs = p
                    .vcomp(&t, &u)
                    .and_then(|tu| p.vcomp(tu, w)).cloned();
                self.record("law12:vcomp-unit-assoc", &[&t, &u, w], lhs, rhs);
            }
        }
        Ok(())
    }

    /// law13: f◁id₂(g) = id₂(f·g) and f◁(θ•γ) = (f◁θ)•(f◁γ).
    fn lwhisker_functorial(&mut self) -> Result<()> {
        let p = self.p;
        for (f, g) in p.composable_pairs() {
            self.charge("law13")?;
            let lhs = p
                .id2(&g)
                .and_then(|i| p.lwhisker(&f, i)).cloned();
            let rhs = p.comp1(&f, &g).and_then(|fg| p.id2(fg)).cloned();
            self.record("law13:lwhisker-functorial", &[&f, &g], lhs, rhs);
        }
        for (f, fc) in &p.one_cells {
            for (t, u) in p.vcomposable_pairs() {
                let tsrc = &p.two_cell(&t)?.src;
                if p.one_cell(tsrc)?.src != fc.tgt {
                    continue;
                }
                self.charge("law13")?;
                let lhs = p
                    .vcomp(&t, &u)
                    .and_then(|tu| p.lwhisker(f, tu)).cloned();
                let rhs = (|| {
                    let a = p.lwhisker(f, &t)?;
                    let b = p.lwhisker(f, &u)?;
                    p.vcomp(a, b).cloned()
                })();
                self.record("law13:lwhisker-functorial", &[f, &t, &u], lhs, rhs);
            }
        }
        Ok(())
    }

    /// law14: id₂(f)▷g = id₂(f·g) and (θ•γ)▷g = (θ▷g)•(γ▷g).
    fn rwhisker_functorial(&mut self) -> Result<()> {
        let p = self.p;
        for (f, g) in p.composable_pairs() {
            self.charge("law14")?;
            let lhs = p
                .id2(&f)
                .and_then(|i| p.rwhisker(i, &g)).cloned();
            let rhs = p.comp1(&f, &g).and_then(|fg| p.id2(fg)).cloned();
            self.record("law14:rwhisker-functorial", &[&f, &g], lhs, rhs);
        }
        for (g, gc) in &p.one_cells {
            for (t, u) in p.vcomposable_pairs() {
                let tsrc = &p.two_cell(&t)?.src;
                if p.one_cell(tsrc)?.tgt != gc.src {
                    continue;
                }
                self.charge("law14")?;
                let lhs = p
                    .vcomp(&t, &u)
                    .and_then(|tu| p.rwhisker(tu, g)).cloned();
                let rhs = (|| {
                    let a = p.rwhisker(&t, g)?;
                    let b = p.rwhisker(&u, g)?;
                    p.vcomp(a, b).cloned()
                })();
                self.record("law14:rwhisker-functorial", &[&t, &u, g], lhs, rhs);
            }
        }
        Ok(())
    }

    /// law15: (id₁(a)◁θ)•λ(g) = λ(f)•θ for θ: f ⇒ g.
    fn lunitor_natural(&mut self) -> Result<()> {
        let p = self.p;
        for (t, tc) in &p.two_cells {
            self.charge("law15")?;
            let a = p.one_cell(&tc.src)?.src.clone();
            let lhs = (|| {
                let i = p.id1(&a)?;
                let w = p.lwhisker(i, t)?;
                let l = p.lunitor(&tc.tgt)?;
                p.vcomp(w, l).cloned()
            })();
            let rhs = (|| {
                let l = p.lunitor(&tc.src)?;
                p.vcomp(l, t).cloned()
            })();
            self.record("law15:lunitor-natural", &[t], lhs, rhs);
        }
        Ok(())
    }

    /// law16: (θ▷id₁(b))•ρ(g) = ρ(f)•θ for θ: f ⇒ g.
    fn runitor_natural(&mut self) -> Result<()> {
        let p = self.p;
        for (t, tc) in &p.two_cells {
            self.charge("law16")?;
            let b = p.one_cell(&tc.src)?.tgt.clone();
            let lhs = (|| {
                let i = p.id1(&b)?;
                let w = p.rwhisker(t, i)?;
                let r = p.runitor(&tc.tgt)?;
                p.vcomp(w, r).cloned()
            })();
            let rhs = (|| {
                let r = p.runitor(&tc.src)?;
                p.vcomp(r, t).cloned()
            })();
            self.record("law16:runitor-natural", &[t], lhs, rhs);
        }
        Ok(())
    }

    /// law17: (f◁(g◁θ))•α(f,g,i) = α(f,g,h)•((f·g)◁θ) for θ: h ⇒ i.
    fn assoc_natural_inner(&mut self) -> Result<()> {
        let p = self.p;
        for (f, g) in p.composable_pairs() {
            let gt = p.one_cell(&g)?.tgt.clone();
            for (t, tc) in &p.two_cells {
                if p.one_cell(&tc.src)?.src != gt {
                    continue;
                }
                self.charge("law17")?;
                let lhs = (|| {
                    let inner = p.lwhisker(&g, t)?;
                    let outer = p.lwhisker(&f, inner)?;
                    let a = p.lassoc(&f, &g, &tc.tgt)?;
                    p.vcomp(outer, a).cloned()
                })();
                let rhs = (|| {
                    let a = p.lassoc(&f, &g, &tc.src)?;
                    let fg = p.comp1(&f, &g)?;
                    let w = p.lwhisker(fg, t)?;
                    p.vcomp(a, w).cloned()
                })();
                self.record("law17:assoc-natural-inner", &[&f, &g, t], lhs, rhs);
            }
        }
        Ok(())
    }

    /// law18: (f◁(θ▷i))•α(f,h,i) = α(f,g,i)•((f◁θ)▷i) for θ: g ⇒ h.
    fn assoc_natural_middle(&mut self) -> Result<()> {
        let p = self.p;
        for (f, fc) in &p.one_cells {
            for (t, tc) in &p.two_cells {
                let gcell = p.one_cell(&tc.src)?;
                if gcell.src != fc.tgt {
                    continue;
                }
                let c_obj = gcell.tgt.clone();
                for (i, ic) in &p.one_cells {
                    if ic.src != c_obj {
                        continue;
                    }
                    self.charge("law18")?;
                    let lhs = (|| {
                        let w = p.rwhisker(t, i)?;
                        let outer = p.lwhisker(f, w)?;
                        let a = p.lassoc(f, &tc.tgt, i)?;
                        p.vcomp(outer, a).cloned()
                    })();
                    let rhs = (|| {
                        let a = p.lassoc(f, &tc.src, i)?;
                        let w = p.lwhisker(f, t)?;
                        let w2 = p.rwhisker(w, i)?;
                        p.vcomp(a, w2).cloned()
                    })();
                    self.record("law18:assoc-natural-middle", &[f, t, i], lhs, rhs);
                }
            }
        }
        Ok(())
    }

    /// law19: (θ▷(h·i))•α(g,h,i) = α(f,h,i)•((θ▷h)▷i) for θ: f ⇒ g.
    fn assoc_natural_outer(&mut self) -> Result<()> {
        let p = self.p;
        for (t, tc) in &p.two_cells {
            let b = p.one_cell(&tc.src)?.tgt.clone();
            for (h, hc) in &p.one_cells {
                if hc.src != b {
                    continue;
                }
                for (i, ic) in &p.one_cells {
                    if ic.src != hc.tgt {
                        continue;
                    }
                    self.charge("law19")?;
                    let lhs = (|| {
                        let hi = p.comp1(h, i)?;
                        let w = p.rwhisker(t, hi)?;
                        let a = p.lassoc(&tc.tgt, h, i)?;
                        p.vcomp(w, a).cloned()
                    })();
                    let rhs = (|| {
                        let a = p.lassoc(&tc.src, h, i)?;
                        let w = p.rwhisker(t, h)?;
                        let w2 = p.rwhisker(w, i)?;
                        p.vcomp(a, w2).cloned()
                    })();
                    self.record("law19:assoc-natural-outer", &[t, h, i], lhs, rhs);
                }
            }
        }
        Ok(())
    }

    /// law20/law21: both unitor inverse laws per 1-cell.
    fn unitor_inverses(&mut self) -> Result<()> {
        let p = self.p;
        for (f, fc) in &p.one_cells {
            self.charge("law20")?;
            self.charge("law21")?;
            let la = p
                .id1(&fc.src)
                .and_then(|i| p.comp1(i, f)).cloned();
            let ra = p
                .id1(&fc.tgt)
                .and_then(|i| p.comp1(f, i)).cloned();
            if let Ok(la) = la {
                let lhs = (|| {
                    let l = p.lunitor(f)?;
                    let li = p.lunitor_inv(f)?;
                    p.vcomp(l, li).cloned()
                })();
                self.record(
                    "law20:lunitor-inverse",
                    &[f],
                    lhs,
                    p.id2(&la).cloned(),
                );
                let lhs2 = (|| {
                    let l = p.lunitor(f)?;
                    let li = p.lunitor_inv(f)?;
                    p.vcomp(li, l).cloned()
                })();
                self.record("law20:lunitor-inverse", &[f], lhs2, p.id2(f).cloned());
            }
            if let Ok(ra) = ra {
                let lhs = (|| {
                    let r = p.runitor(f)?;
                    let ri = p.runitor_inv(f)?;
                    p.vcomp(r, ri).cloned()
                })();
                self.record(
                    "law21:runitor-inverse",
                    &[f],
                    lhs,
                    p.id2(&ra).cloned(),
                );
                let lhs2 = (|| {
                    let r = p.runitor(f)?;
                    let ri = p.runitor_inv(f)?;
                    p.vcomp(ri, r).cloned()
                })();
                self.record("law21:runitor-inverse", &[f], lhs2, p.id2(f).cloned());
            }
        }
        Ok(())
    }

    /// law22: α(f,g,h)•α(f,g,h)⁻¹ = id₂(f·(g·h)) and the other direction.
    fn assoc_inverse(&mut self) -> Result<()> {
        let p = self.p;
        for (f, g, h) in p.composable_triples() {
            self.charge("law22")?;
            let left_shape = (|| {
                let gh = p.comp1(&g, &h)?;
                p.comp1(&f, gh).cloned()
            })();
            let right_shape = (|| {
                let fg = p.comp1(&f, &g)?;
                p.comp1(fg, &h).cloned()
            })();
            let fwd = (|| {
                let a = p.lassoc(&f, &g, &h)?;
                let ai = p.lassoc_inv(&f, &g, &h)?;
                p.vcomp(a, ai).cloned()
            })();
            self.record(
                "law22:assoc-inverse",
                &[&f, &g, &h],
                fwd,
                left_shape.and_then(|c| p.id2(&c).cloned()),
            );
            let bwd = (|| {
                let a = p.lassoc(&f, &g, &h)?;
                let ai = p.lassoc_inv(&f, &g, &h)?;
                p.vcomp(ai, a).cloned()
            })();
            self.record(
                "law22:assoc-inverse",
                &[&f, &g, &h],
                bwd,
                right_shape.and_then(|c| p.id2(&c).cloned()),
            );
        }
        Ok(())
    }

    /// law23: α(f,id₁(b),g)•(ρ(f)▷g) = f◁λ(g).
    fn triangle(&mut self) -> Result<()> {
        let p = self.p;
        for (f, fc) in &p.one_cells {
            let b = fc.tgt.clone();
            for (g, gc) in &p.one_cells {
                if gc.src != b {
                    continue;
                }
                self.charge("law23")?;
                let lhs = (|| {
                    let i = p.id1(&b)?.clone();
                    let a = p.lassoc(f, &i, g)?;
                    let r = p.runitor(f)?;
                    let w = p.rwhisker(r, g)?;
                    p.vcomp(a, w).cloned()
                })();
                let rhs = (|| {
                    let l = p.lunitor(g)?;
                    p.lwhisker(f, l).cloned()
                })();
                self.record("law23:triangle", &[f, g], lhs, rhs);
            }
        }
        Ok(())
    }

    /// law24: α(f,g,h·i)•α(f·g,h,i) = (f◁α(g,h,i))•α(f,g·h,i)•(α(f,g,h)▷i).
    fn pentagon(&mut self) -> Result<()> {
        let p = self.p;
        for (f, g, h) in p.composable_triples() {
            let ht = p.one_cell(&h)?.tgt.clone();
            for (i, ic) in &p.one_cells {
                if ic.src != ht {
                    continue;
                }
                self.charge("law24")?;
                let lhs = (|| {
                    let hi = p.comp1(&h, i)?.clone();
                    let a1 = p.lassoc(&f, &g, &hi)?.clone();
                    let fg = p.comp1(&f, &g)?.clone();
                    let a2 = p.lassoc(&fg, &h, i)?;
                    p.vcomp(&a1, a2).cloned()
                })();
                let rhs = (|| {
                    let a_inner = p.lassoc(&g, &h, i)?.clone();
                    let w1 = p.lwhisker(&f, &a_inner)?.clone();
                    let gh = p.comp1(&g, &h)?.clone();
                    let a_mid = p.lassoc(&f, &gh, i)?.clone();
                    let a_left = p.lassoc(&f, &g, &h)?.clone();
                    let w2 = p.rwhisker(&a_left, i)?.clone();
                    p.vcomp_chain([&w1, &a_mid, &w2])
                })();
                self.record("law24:pentagon", &[&f, &g, &h, i], lhs, rhs);
            }
        }
        Ok(())
    }
}

/// Checks every instantiation of the thirteen law families by table
/// evaluation. Assumes a validated presentation; on unvalidated input the
/// failing lookups surface as violations with the lookup error inlined.
pub fn check_laws(p: &BicatPresentation, budget: &Budget) -> Result<LawReport> {
    let mut chk = LawCheck {
        p,
        budget,
        violations: Vec::new(),
    };
    chk.vcomp_unit_assoc()?;
    chk.lwhisker_functorial()?;
    chk.rwhisker_functorial()?;
    chk.lunitor_natural()?;
    chk.runitor_natural()?;
    chk.assoc_natural_inner()?;
    chk.assoc_natural_middle()?;
    chk.assoc_natural_outer()?;
    chk.unitor_inverses()?;
    chk.assoc_inverse()?;
    chk.triangle()?;
    chk.pentagon()?;
    Ok(LawReport::from_violations(chk.violations))
}
