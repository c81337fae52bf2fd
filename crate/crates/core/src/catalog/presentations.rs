use crate::arith::Matrix;
use crate::error::{Error, Result};
use crate::ncalg::{
    build_au, minus_identity_entries, poly_adjoint, poly_bar, poly_matmul, scalar_to_poly_matrix,
    FamilyShape, NcPoly, Presentation,
};

fn square_family(label: &str, d: usize) -> Result<FamilyShape> {
    if d == 0 {
        return Err(Error::InvalidParams("dimension must be at least 1".into()));
    }
    let d = u16::try_from(d).map_err(|_| Error::InvalidParams("dimension too large".into()))?;
    FamilyShape::new(label, 0, d, d)
}

fn self_adjoint(u: &[Vec<NcPoly>]) -> Vec<NcPoly> {
    u.iter().flatten().map(|x| x - &x.star()).collect()
}

/// Antipode `S(g) = g'` for a self-adjoint family with `S(u_ij) = u_ji`.
fn transpose_antipode(p: &mut Presentation, fam: &FamilyShape) {
    for i in 1..=fam.rows {
        for j in 1..=fam.cols {
            let img = NcPoly::gen(fam.generator(j, i));
            p.antipode.insert(fam.generator(i, j), img.clone());
            p.antipode.insert(fam.generator(i, j).star(), img);
        }
    }
}

/// The hyperoctahedral quantum group `A_h(d)` on the family `u`: self-adjoint
/// entries, `u_ij u_ik = u_ji u_ki = 0` for `j ≠ k`, and row and column sums
/// of squares equal to 1.
pub fn hyperoctahedral(d: usize) -> Result<Presentation> {
    let fam = square_family("u", d)?;
    let u = fam.matrix();
    let mut rels = self_adjoint(&u);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if j != k {
                    rels.push(&u[i][j] * &u[i][k]);
                    rels.push(&u[j][i] * &u[k][i]);
                }
            }
        }
    }
    for i in 0..d {
        let row: NcPoly = (0..d).map(|l| &u[i][l] * &u[i][l]).sum();
        let col: NcPoly = (0..d).map(|l| &u[l][i] * &u[l][i]).sum();
        rels.push(&row - &NcPoly::one());
        rels.push(&col - &NcPoly::one());
    }
    let mut p = Presentation {
        name: format!("A_h({d})"),
        families: vec![fam.clone()],
        relations: rels,
        ..Default::default()
    };
    p.set_multiplicative(&fam);
    transpose_antipode(&mut p, &fam);
    Ok(p)
}

/// The quantum permutation group `A_s(d)` on the family `v`: self-adjoint
/// projections with row and column sums 1. For `d ≥ 3` the orthogonality of
/// entries in a row or column is added explicitly.
pub fn quantum_permutation(d: usize) -> Result<Presentation> {
    let fam = square_family("v", d)?;
    let v = fam.matrix();
    let mut rels: Vec<NcPoly> = v.iter().flatten().map(|x| &(x * x) - x).collect();
    for i in 0..d {
        let row: NcPoly = v[i].iter().cloned().sum();
        let col: NcPoly = (0..d).map(|l| v[l][i].clone()).sum();
        rels.push(&row - &NcPoly::one());
        rels.push(&col - &NcPoly::one());
    }
    rels.extend(self_adjoint(&v));
    if d >= 3 {
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if j != k {
                        rels.push(&v[i][j] * &v[i][k]);
                        rels.push(&v[j][i] * &v[k][i]);
                    }
                }
            }
        }
    }
    let mut p = Presentation {
        name: format!("A_s({d})"),
        families: vec![fam.clone()],
        relations: rels,
        ..Default::default()
    };
    p.set_multiplicative(&fam);
    transpose_antipode(&mut p, &fam);
    Ok(p)
}

/// `C(ℤ₂)`: one self-adjoint unitary `z` with `Δ(z) = z ⊗ z`.
pub fn c_z2() -> Presentation {
    let fam = FamilyShape::new("z", 0, 1, 1).expect("valid family");
    let z = NcPoly::gen(fam.generator(1, 1));
    let mut p = Presentation {
        name: "C(Z2)".into(),
        families: vec![fam.clone()],
        relations: vec![&z - &z.star(), &(&z * &z) - &NcPoly::one()],
        ..Default::default()
    };
    p.set_multiplicative(&fam);
    transpose_antipode(&mut p, &fam);
    p
}

/// `A_s(d) ⊗ C(ℤ₂)` with cross-commutation.
pub fn permutation_times_z2(d: usize) -> Result<Presentation> {
    quantum_permutation(d)?.tensor_product(&c_z2())
}

/// `A_u(s)` on the family `u`.
pub fn universal_unitary(s: &Matrix) -> Result<Presentation> {
    build_au(s, "u", 0)
}

/// The free orthogonal quantum group `A_o(P)`: `u` unitary with
/// `u = P ū P⁻¹`. Requires `P P̄` to be a nonzero multiple of the identity,
/// which makes the relation compatible with its own conjugate.
pub fn free_orthogonal(p: &Matrix) -> Result<Presentation> {
    if !p.is_square() {
        return Err(Error::Shape("P must be square".into()));
    }
    let p_inv = p.inverse()?;
    let ppbar = p.mul(&p.conj())?;
    let c = ppbar[(0, 0)].clone();
    if c.is_zero() || ppbar != Matrix::identity(p.rows()).scale(&c) {
        return Err(Error::InvalidParams(
            "A_o(P) needs P P̄ proportional to I".into(),
        ));
    }
    let fam = square_family("u", p.rows())?;
    let u = fam.matrix();
    let uadj = poly_adjoint(&u);
    let mut rels = minus_identity_entries(&poly_matmul(&u, &uadj));
    rels.extend(minus_identity_entries(&poly_matmul(&uadj, &u)));
    let pp = scalar_to_poly_matrix(p);
    let pip = scalar_to_poly_matrix(&p_inv);
    let twisted = poly_matmul(&poly_matmul(&pp, &poly_bar(&u)), &pip);
    for (row, trow) in u.iter().zip(&twisted) {
        for (x, y) in row.iter().zip(trow) {
            let r = x - y;
            if !r.is_zero() {
                rels.push(r);
            }
        }
    }
    let mut pres = Presentation {
        name: "A_o(P)".into(),
        families: vec![fam.clone()],
        relations: rels,
        ..Default::default()
    };
    pres.set_multiplicative(&fam);
    // S(u) = u*, S(ū) = P⁻¹ u* P
    let s_bar = poly_matmul(&poly_matmul(&pip, &uadj), &pp);
    for i in 1..=fam.rows {
        for j in 1..=fam.cols {
            let g = fam.generator(i, j);
            pres.antipode
                .insert(g, NcPoly::gen(fam.generator(j, i).star()));
            pres.antipode.insert(
                g.star(),
                s_bar[usize::from(i - 1)][usize::from(j - 1)].clone(),
            );
        }
    }
    Ok(pres)
}

/// The 2 × 2 swap matrix.
pub fn swap2() -> Matrix {
    Matrix::from_ints(&[&[0, 1], &[1, 0]]).expect("2 × 2")
}
