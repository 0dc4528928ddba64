//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! when any criterion fails.
//!
//! Run with `cargo test -p confspace --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use confspace::chain::{hocolim_zigzag, homology, ChainComplex, ChainMap, Coefficients, ZigzagDiagram};
use confspace::combinatorics::{enumerate_index_tuples, heights, ranks};
use confspace::complex::standard::{cycle, path, point, two_points};
use confspace::complex::{OrderedComplex, SimplicialMap};
use confspace::report::{self, Table};
use confspace::suspension::{build_c, invariance_check, sigma_cofiber, suspension_report};
use confspace::tower::{assemble_tower, TowerOptions};
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{betti, convolve, poincare_polynomial, random_zigzag};

const Q: Coefficients = Coefficients::Rational;

/// Outcome of one criterion: whether it held, a short detail line, and the
/// TSV it produced (compared across runs by the determinism criterion).
struct Verdict {
    ok: bool,
    detail: String,
    tsv: String,
}

type Check = fn() -> Verdict;

fn fail_on_err(r: confspace::Result<Verdict>) -> Verdict {
    r.unwrap_or_else(|e| Verdict { ok: false, detail: format!("error: {e}"), tsv: String::new() })
}

fn tower_betti(k: &OrderedComplex, n: usize) -> confspace::Result<confspace::chain::HomologySummary> {
    assemble_tower(k, n, TowerOptions::default())?.homology(Q)
}

fn criterion_1() -> Verdict {
    fail_on_err((|| {
        let mut notes = Vec::new();
        for k in 1..=7usize {
            let tuples = enumerate_index_tuples(k)?;
            let factorial: usize = (1..=k).product();
            let mut perms = BTreeSet::new();
            for i in &tuples {
                let h = heights(i)?;
                let t = h.values();
                for (m, x) in t.iter().enumerate() {
                    let bound = Ratio::from_integer(m as i64);
                    if *x > bound || *x < -bound || t[..m].contains(x) {
                        return Ok(Verdict {
                            ok: false,
                            detail: format!("heights of {i} violate the bounds"),
                            tsv: String::new(),
                        });
                    }
                }
                let r = ranks(i)?;
                let mut sorted = r.values().to_vec();
                sorted.sort_unstable();
                if sorted != (1..=k).collect::<Vec<_>>() || !r.consistent_with(&h) {
                    return Ok(Verdict {
                        ok: false,
                        detail: format!("ranks of {i} are not the height order"),
                        tsv: String::new(),
                    });
                }
                perms.insert(r.values().to_vec());
            }
            if tuples.len() != factorial || perms.len() != factorial {
                return Ok(Verdict {
                    ok: false,
                    detail: format!("k={k}: {} tuples, {} orderings", tuples.len(), perms.len()),
                    tsv: String::new(),
                });
            }
            notes.push(format!("{}", tuples.len()));
        }
        Ok(Verdict { ok: true, detail: format!("|A_k| = {}", notes.join(",")), tsv: String::new() })
    })())
}

/// `hocolim(pt <- X -> pt)`.
fn suspension_of(x: &OrderedComplex) -> confspace::Result<ChainComplex> {
    let pt = point();
    let to_pt = SimplicialMap::new(x.clone(), pt.clone(), vec![0; x.vertex_count()])?;
    let xc = Arc::new(x.chains());
    let pc = Arc::new(pt.chains());
    let l = to_pt.induced_map_between(xc.clone(), pc.clone());
    let pc2 = Arc::new(pt.chains());
    let r = to_pt.induced_map_between(xc.clone(), pc2.clone());
    let z = ZigzagDiagram::new(vec![pc, pc2], vec![xc], vec![l], vec![r])?;
    Ok((*hocolim_zigzag(&z)?.complex).clone())
}

fn criterion_2() -> Verdict {
    fail_on_err((|| {
        let s0 = betti(&suspension_of(&two_points())?);
        let s1 = betti(&suspension_of(&cycle(6))?);
        let mut ok = s0 == [1, 1] && s1 == [1, 0, 1];
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut bad = 0;
        for trial in 0..20 {
            let (z, odd, even) = random_zigzag(&mut rng, 2 + trial % 4);
            let h = hocolim_zigzag(&z)?;
            let expected: i64 = odd.iter().sum::<i64>() - even.iter().sum::<i64>();
            let computed = homology(&h.complex, Q)?.euler_characteristic();
            if computed != expected || h.complex.euler_characteristic() != expected {
                bad += 1;
            }
        }
        ok &= bad == 0;
        Ok(Verdict {
            ok,
            detail: format!("S(S^0) betti {s0:?}, S(C_6) betti {s1:?}, Euler formula failures {bad}/20"),
            tsv: String::new(),
        })
    })())
}

fn criterion_3() -> Verdict {
    fail_on_err((|| {
        let mut t = report::betti_header();
        let mut ok = true;
        let mut shown = Vec::new();
        for k in 2..=4 {
            let h = tower_betti(&path(3), k)?;
            ok &= h.betti() == poincare_polynomial(k).as_slice();
            shown.push(format!("k={k} {:?}", h.betti()));
            report::push_betti(&mut t, &format!("P_3 E^{k}"), Q, &h);
        }
        Ok(Verdict { ok, detail: shown.join(", "), tsv: t.to_tsv() })
    })())
}

fn criterion_4() -> Verdict {
    fail_on_err((|| {
        let h = tower_betti(&cycle(6), 2)?;
        // F_2(annulus) = annulus x (annulus minus a point) ~ S^1 x (S^1 v S^1).
        let oracle = convolve(&[1, 1], &[1, 2]);
        let t = report::betti_table("C_6 E^2", Q, &h);
        Ok(Verdict { ok: h.betti() == oracle.as_slice(), detail: format!("{:?}", h.betti()), tsv: t.to_tsv() })
    })())
}

fn criterion_5() -> Verdict {
    fail_on_err((|| {
        let mut ok = true;
        let mut t = Table::new(["complex", "k", "euler", "expected"]);
        for (name, k, top) in [("P_3", path(3), 4), ("C_6", cycle(6), 3)] {
            let chi_k = k.euler_characteristic();
            let mut prev = tower_betti(&k, 1)?.euler_characteristic();
            ok &= prev == chi_k;
            for n in 2..=top {
                let chi = tower_betti(&k, n)?.euler_characteristic();
                let expected = prev * (chi_k - (n as i64 - 1));
                ok &= chi == expected;
                t.push([name.to_string(), n.to_string(), chi.to_string(), expected.to_string()]);
                prev = chi;
            }
        }
        let detail = t.rows.iter().map(|r| format!("{} k={} chi={}", r[0], r[1], r[2])).collect::<Vec<_>>();
        Ok(Verdict { ok, detail: detail.join(", "), tsv: t.to_tsv() })
    })())
}

fn criterion_6() -> Verdict {
    fail_on_err((|| {
        let cases = [
            ("P_3/P_6", path(3), path(6), 2),
            ("P_3/P_6", path(3), path(6), 3),
            ("C_5/C_8", cycle(5), cycle(8), 2),
            ("C_6/C_9", cycle(6), cycle(9), 3),
        ];
        let mut ok = true;
        let mut tsv = String::new();
        let mut shown = Vec::new();
        for (name, a, b, k) in cases {
            let r = invariance_check(&a, &b, k, TowerOptions::default(), Q)?;
            let tower = &r.rows[0];
            ok &= tower.passed();
            shown.push(format!("{name} k={k} {}|{}", tower.a.betti_row(), tower.b.betti_row()));
            tsv.push_str(&report::verdict_table(&r, Q).to_tsv());
        }
        Ok(Verdict { ok, detail: shown.join(", "), tsv })
    })())
}

fn criterion_7() -> Verdict {
    fail_on_err((|| {
        let mut ok = true;
        let mut tsv = String::new();
        let mut shown = Vec::new();
        // Components of F_3: 3! for an arc, 2 cyclic orders for a circle.
        for (name, k, components) in [("P_4", path(4), 6), ("C_6", cycle(6), 2)] {
            let r = suspension_report(&k, Q)?;
            let h1 = r.cofiber.betti_at(1);
            ok &= r.c_matches_e23() && r.shift_law_holds() && h1 == components && r.f3.betti_at(0) == components;
            shown.push(format!("{name}: C={} E23={} cofiber={}", r.c.betti_row(), r.e23.betti_row(), r.cofiber.betti_row()));
            tsv.push_str(&report::suspension_table(&r, Q).to_tsv());
            tsv.push_str(&report::suspension_checks(&r).to_tsv());
        }
        Ok(Verdict { ok, detail: shown.join("; "), tsv })
    })())
}

fn criterion_8() -> Verdict {
    fail_on_err((|| {
        let mut ok = true;
        let mut t = report::betti_header();
        let mut shown = Vec::new();
        for (na, a, nb, b) in [("C_6", cycle(6), "C_9", cycle(9)), ("P_4", path(4), "P_7", path(7))] {
            let ha = homology(&sigma_cofiber(&build_c(&a)?), Q)?;
            let hb = homology(&sigma_cofiber(&build_c(&b)?), Q)?;
            ok &= ha == hb;
            shown.push(format!("{na}/{nb} {}|{}", ha.betti_row(), hb.betti_row()));
            report::push_betti(&mut t, &format!("cofiber {na}"), Q, &ha);
            report::push_betti(&mut t, &format!("cofiber {nb}"), Q, &hb);
        }
        Ok(Verdict { ok, detail: shown.join(", "), tsv: t.to_tsv() })
    })())
}

fn criterion_9() -> Verdict {
    fail_on_err((|| {
        let c3 = Arc::new(cycle(3).chains());
        let id = ChainMap::identity(c3.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut bad = 0;
        for trial in 0..10 {
            let (z, _, _) = random_zigzag(&mut rng, 2 + trial % 3);
            let base = betti(&hocolim_zigzag(&z)?.complex);
            let tensored = z.map_nodes(|c| c.tensor(&c3), |f| f.tensor(&id))?;
            let b = betti(&hocolim_zigzag(&tensored)?.complex);
            if b != convolve(&base, &[1, 1]) {
                bad += 1;
            }
        }
        Ok(Verdict { ok: bad == 0, detail: format!("Kunneth failures {bad}/10"), tsv: String::new() })
    })())
}

const CRITERIA: [(&str, Check); 9] = [
    ("combinatorics", criterion_1),
    ("hocolim engine", criterion_2),
    ("tower of P_3", criterion_3),
    ("tower of C_6", criterion_4),
    ("Euler recursion", criterion_5),
    ("tower invariance", criterion_6),
    ("suspension cofiber", criterion_7),
    ("cofiber invariance", criterion_8),
    ("tensoring with C_3", criterion_9),
];

fn line(n: usize, name: &str, ok: bool, elapsed: Duration, detail: &str) -> bool {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("criterion {n:>2} {status} {name} ({:.2}s): {detail}", elapsed.as_secs_f64());
    ok
}

fn main() -> ExitCode {
    let mut all = true;
    let mut first_run = Vec::new();
    for (n, (name, check)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let v = check();
        all &= line(n + 1, name, v.ok, start.elapsed(), &v.detail);
        first_run.push(v.tsv);
    }

    // Criterion 10: rerun criteria 3-8 and compare their TSV byte for byte.
    let start = Instant::now();
    let mut same = true;
    for n in 3..=8 {
        let again = (CRITERIA[n - 1].1)().tsv;
        same &= !again.is_empty() && again == first_run[n - 1];
    }
    let bytes: usize = first_run[2..8].iter().map(String::len).sum();
    all &= line(10, "determinism", same, start.elapsed(), &format!("{bytes} TSV bytes compared"));

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
