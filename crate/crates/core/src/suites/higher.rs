use serde_json::json;

use super::{Ctx, Recorder};
use crate::serre_plus::{higher_serre_free, vanishing_grid, verify_hs_lemmas, verify_kind_relations, HigherSerreSpec, Kind};

/// Largest n and m swept by the vanishing grid.
const NMAX: i64 = 2;
const MMAX: i64 = 6;

pub(super) fn higher_serre_suite(ctx: &Ctx, rec: &mut Recorder) {
    let d = ctx.datum.clone();
    let n = d.rank();
    if n < 2 {
        rec.not_applicable("higher Serre elements", "need at least two generators");
        return;
    }
    let widest = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| -d.a(i, j)).max().unwrap_or(0);
    // e_{n,m} lives in height n + m
    let mmax = MMAX.max(NMAX * widest + 1);
    let grid_cap = (NMAX + mmax) as usize;
    let alg = ctx.algebra(grid_cap);
    match vanishing_grid(&alg, NMAX, mmax) {
        Ok(cells) => {
            for c in cells {
                let params = json!({"i": c.i, "j": c.j, "n": c.n, "m": c.m});
                if c.claimed {
                    rec.push("e_{n,m} vanishes for m > -n a_ij", params, c.vanishes, 0, None);
                } else if c.m == -c.n * d.a(c.i, c.j) && c.n >= 1 {
                    rec.push("control: e_{n,m} is nonzero on the vanishing boundary", params, !c.vanishes, 0, None);
                }
            }
        }
        Err(e) => rec.push("e_{n,m} vanishes for m > -n a_ij", json!({"nmax": NMAX, "mmax": mmax}), false, 0, Some(e.to_string())),
    }

    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let m = 1 - d.a(i, j);
            rec.check("e'_{1,1-a_ij} equals the quantum Serre element", json!({"i": i, "j": j}), || {
                let x = higher_serre_free(&alg, &HigherSerreSpec::new(i, j, 1, m, Kind::EPrime))?;
                Ok(x == alg.free().serre_element(i, j)?)
            });
        }
    }

    // The commutation lemmas multiply in U, which is the expensive step;
    // ranges are kept small and the algebra is sized to the largest product.
    let (lnmax, lmmax, big) = (2, 3, 3);
    let lem_cap = (lnmax + lmmax + big + 1).max(lnmax * (1 + widest) + 2) as usize;
    let lem_alg = ctx.algebra(ctx.cap.max(lem_cap));
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            match verify_hs_lemmas(&lem_alg, i, j, lnmax, lmmax, big) {
                Ok(rows) => {
                    for row in rows {
                        let params = json!({"i": row.i, "j": row.j, "params": row.params});
                        let detail = row.trivial.then(|| "both sides are zero in U".to_string());
                        rec.push(&format!("higher Serre {} identity", row.lemma), params, row.holds, 0, detail);
                    }
                }
                Err(e) => rec.push("higher Serre identities", json!({"i": i, "j": j}), false, 0, Some(e.to_string())),
            }
            match verify_kind_relations(&lem_alg, i, j, 2, 3) {
                Ok(rows) => {
                    for row in rows {
                        rec.push(&format!("higher Serre relation {}", row.relation), json!({"i": i, "j": j, "n": row.n, "m": row.m}), row.holds, 0, None);
                    }
                }
                Err(e) => rec.push("higher Serre relations among e, e', f, f'", json!({"i": i, "j": j}), false, 0, Some(e.to_string())),
            }
        }
    }
}
