//! Versioned JSON export of neighbour witnesses: one record per ideal
//! class, carrying the constructed pair, its matrices and reciprocity
//! data, plus any explicit family witnesses landing in the same class.
//!
//! Schema (version 1): elements of `O_K` are `[x, y]` over the basis
//! `(1, omega)`; matrices are row-major pairs of such elements. See the
//! README for the full field list.

use farey_core::bianchi::{
    example_family, ExchangeStatus, Family, FareyWitness, MoebiusMatrix, ProjectivePoint,
    WitnessSource,
};
use farey_core::quadfield::{QuadField, QuadIdeal};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct WitnessFile {
    pub schema_version: u32,
    pub field: FieldDto,
    pub witnesses: Vec<WitnessDto>,
}

#[derive(Serialize)]
pub struct FieldDto {
    pub f: i64,
    pub discriminant: i64,
    pub omega_is_half: bool,
    pub unit_count: u32,
    pub class_number: u64,
}

#[derive(Serialize)]
pub struct IdealDto {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub norm: i128,
}

pub type ElemDto = [i128; 2];

#[derive(Serialize)]
pub struct PointDto {
    pub num: ElemDto,
    pub den: ElemDto,
}

pub type MatrixDto = [[ElemDto; 2]; 2];

#[derive(Serialize)]
pub struct WitnessDto {
    pub class_index: usize,
    pub class_representative: IdealDto,
    pub source: String,
    pub alpha: PointDto,
    pub beta: PointDto,
    pub gap_norm: String,
    pub c_matrix: MatrixDto,
    pub e_matrix: Option<MatrixDto>,
    pub iota: u8,
    pub exchange_status: &'static str,
    pub m: u32,
    /// Explicit family witnesses whose endpoints lie in this class.
    pub families: Vec<FamilyDto>,
}

#[derive(Serialize)]
pub struct FamilyDto {
    pub id: &'static str,
    pub alpha: PointDto,
    pub beta: PointDto,
    pub c_matrix: MatrixDto,
    pub e_matrix: Option<MatrixDto>,
    pub iota: u8,
    pub m: u32,
}

fn elem(v: farey_core::quadfield::QuadInt) -> ElemDto {
    [v.x, v.y]
}

fn point(p: &ProjectivePoint) -> PointDto {
    PointDto {
        num: elem(p.num()),
        den: elem(p.den()),
    }
}

fn matrix(m: &MoebiusMatrix) -> MatrixDto {
    [[elem(m.a), elem(m.b)], [elem(m.c), elem(m.d)]]
}

fn ideal(i: &QuadIdeal) -> IdealDto {
    IdealDto {
        a: i.a,
        b: i.b,
        c: i.c,
        norm: i.norm(),
    }
}

fn source_label(s: &WitnessSource) -> String {
    match s {
        WitnessSource::PrincipalOrbit => "principal-orbit".to_string(),
        WitnessSource::PrimeConstruction { p0, a0, ramified } => {
            format!(
                "prime p0={p0} a0={a0} {}",
                if *ramified { "ramified" } else { "split" }
            )
        }
        WitnessSource::Family(fam) => format!("family-{}", fam.id()),
    }
}

fn status_label(s: ExchangeStatus) -> &'static str {
    match s {
        ExchangeStatus::Proved => "proved",
        ExchangeStatus::Obstructed => "class-obstruction",
        ExchangeStatus::SearchExhausted => "search-exhausted",
    }
}

fn family_dto(w: &FareyWitness) -> FamilyDto {
    let id = match w.source {
        WitnessSource::Family(fam) => fam.id(),
        _ => "unknown",
    };
    FamilyDto {
        id,
        alpha: point(&w.alpha),
        beta: point(&w.beta),
        c_matrix: matrix(&w.c_matrix),
        e_matrix: w.e_matrix.as_ref().map(matrix),
        iota: w.iota,
        m: w.m,
    }
}

/// One witness per ideal class, with applicable family data attached.
///
/// Classes are visited in the representative order of the class group
/// (principal first).
pub fn build_witness_file(field: QuadField) -> Result<WitnessFile, String> {
    let cg = field.class_group().map_err(|e| e.to_string())?;
    // family witnesses available on this field, grouped by class
    let mut family_witnesses: Vec<FareyWitness> = Vec::new();
    for fam in [Family::Ex1, Family::Ex2, Family::Ex3] {
        if let Ok(w) = example_family(field, fam) {
            family_witnesses.push(w);
        }
    }
    let mut witnesses = Vec::new();
    for (idx, rep) in cg.representatives.iter().enumerate() {
        let [b0, b1] = rep.basis();
        let target = ProjectivePoint::new(field, b1, b0).map_err(|e| e.to_string())?;
        let w =
            farey_core::bianchi::construct_k_farey(field, &target).map_err(|e| e.to_string())?;
        let gap = w
            .alpha
            .gap_norm(&w.beta)
            .map(|g| g.to_string())
            .unwrap_or_else(|| "inf".to_string());
        let families = family_witnesses
            .iter()
            .filter(|fw| {
                field
                    .class_index(&fw.alpha.ideal())
                    .map(|i| i == idx)
                    .unwrap_or(false)
            })
            .map(family_dto)
            .collect();
        witnesses.push(WitnessDto {
            class_index: idx,
            class_representative: ideal(rep),
            source: source_label(&w.source),
            alpha: point(&w.alpha),
            beta: point(&w.beta),
            gap_norm: gap,
            c_matrix: matrix(&w.c_matrix),
            e_matrix: w.e_matrix.as_ref().map(matrix),
            iota: w.iota,
            exchange_status: status_label(w.exchange_status),
            m: w.m,
            families,
        });
    }
    Ok(WitnessFile {
        schema_version: SCHEMA_VERSION,
        field: FieldDto {
            f: field.f(),
            discriminant: field.discriminant(),
            omega_is_half: field.omega_is_half(),
            unit_count: field.unit_count(),
            class_number: cg.h,
        },
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_attach_to_their_classes() {
        // f = -6 has h = 2; both ramified families land in the same
        // nonprincipal class and attach to its record
        let field = QuadField::new(-6).unwrap();
        let file = build_witness_file(field).unwrap();
        assert_eq!(file.witnesses.len(), 2);
        assert!(file.witnesses[0].families.is_empty());
        let ids: Vec<&str> = file.witnesses[1].families.iter().map(|f| f.id).collect();
        assert_eq!(ids, vec!["ex1", "ex3"]);
    }

    #[test]
    fn principal_only_field() {
        let field = QuadField::new(-3).unwrap();
        let file = build_witness_file(field).unwrap();
        assert_eq!(file.field.class_number, 1);
        assert_eq!(file.witnesses.len(), 1);
        assert_eq!(file.witnesses[0].source, "principal-orbit");
        assert_eq!(file.witnesses[0].iota, 1);
        assert_eq!(file.witnesses[0].m, 3);
    }
}
