//! Line-based text formats for ring/structure files and fan files.
//!
//! Structure format (UTF-8, `#` comments):
//!
//! ```text
//! base Z | Z/m | GF(q)
//! gens x y t
//! laurent t
//! rel x^2 - x
//! psi 2: x -> x^2 - 2
//! default toric | identity
//! cond f(1) - f(-1)
//! ```
//!
//! `rel` polynomials use explicit `*`; `psi` lines give one generator image
//! per line and every declared prime must cover all generators. `cond`
//! lines are integer combinations of evaluations f(c) and first
//! derivatives f'(c). Fan format:
//!
//! ```text
//! dim 2
//! ray 1 0
//! ray 0 1
//! cone 0 1
//! ```
//!
//! Ray indices are zero-based; the zero cone is implicit. Serializers emit
//! canonical text that reparses to an identical structure.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::f1::fan::Fan;
use crate::lambda::sub::{CondTerm, Condition};
use crate::lambda::{DefaultRule, LambdaStructure};
use crate::parse::parse_poly;
use crate::poly::{Poly, Vars};
use crate::ring::RingPresentation;
use crate::scalar::BaseRing;

/// A parsed structure file: the lambda-structure plus any sub-ring
/// conditions it declares.
#[derive(Debug, Clone)]
pub struct StructureFile {
    pub lambda: LambdaStructure,
    pub conditions: Vec<Condition>,
}

pub fn parse_structure(label: &str, src: &str) -> Result<StructureFile> {
    let mut base: Option<BaseRing> = None;
    let mut gens: Vec<String> = Vec::new();
    let mut laurent: Vec<String> = Vec::new();
    let mut rel_srcs: Vec<(usize, String)> = Vec::new();
    let mut psi_srcs: Vec<(usize, u64, String, String)> = Vec::new();
    let mut default_rule: Option<DefaultRule> = None;
    let mut conditions: Vec<Condition> = Vec::new();

    for (ln, raw) in src.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "base" => {
                base = Some(BaseRing::parse(rest).map_err(|e| Error::parse(ln, e.to_string()))?);
            }
            "gens" => {
                gens = rest.split_whitespace().map(|s| s.to_string()).collect();
                if gens.is_empty() {
                    return Err(Error::parse(ln, "gens line lists at least one name"));
                }
            }
            "laurent" => {
                for name in rest.split_whitespace() {
                    laurent.push(name.to_string());
                }
            }
            "rel" => rel_srcs.push((ln, rest.to_string())),
            "psi" => {
                // "psi 2: x -> x^2 - 2"
                let (p_part, map_part) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::parse(ln, "psi line needs 'psi p: gen -> poly'"))?;
                let p: u64 = p_part
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(ln, "bad prime in psi line"))?;
                let (gen, img) = map_part
                    .split_once("->")
                    .ok_or_else(|| Error::parse(ln, "psi line needs '->'"))?;
                psi_srcs.push((ln, p, gen.trim().to_string(), img.trim().to_string()));
            }
            "default" => {
                default_rule = Some(match rest {
                    "toric" => DefaultRule::Toric,
                    "identity" => DefaultRule::Identity,
                    other => return Err(Error::parse(ln, format!("unknown default rule {other}"))),
                });
            }
            "cond" => {
                conditions.push(parse_condition(ln, rest)?);
            }
            other => return Err(Error::parse(ln, format!("unknown directive {other}"))),
        }
    }

    let base = base.ok_or_else(|| Error::parse(0, "missing base line"))?;
    if gens.is_empty() {
        return Err(Error::parse(0, "missing gens line"));
    }
    for l in &laurent {
        if !gens.contains(l) {
            return Err(Error::parse(0, format!("laurent names unknown generator {l}")));
        }
    }
    let flags: Vec<bool> = gens.iter().map(|g| laurent.contains(g)).collect();
    let vars = Vars::with_laurent(&gens, &flags);
    let rels = rel_srcs
        .into_iter()
        .map(|(ln, s)| parse_poly(&vars, &s).map_err(|e| Error::parse(ln, e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let ring = RingPresentation::new(base, vars.clone(), rels)?;

    let mut psi: BTreeMap<u64, Vec<Option<Poly>>> = BTreeMap::new();
    for (ln, p, gen, img) in psi_srcs {
        let gi = vars
            .index_of(&gen)
            .ok_or_else(|| Error::parse(ln, format!("unknown generator {gen}")))?;
        let poly = parse_poly(&vars, &img).map_err(|e| Error::parse(ln, e.to_string()))?;
        let entry = psi.entry(p).or_insert_with(|| vec![None; vars.len()]);
        if entry[gi].is_some() {
            return Err(Error::parse(ln, format!("duplicate psi {p} image for {gen}")));
        }
        entry[gi] = Some(poly);
    }
    let mut psi_full = BTreeMap::new();
    for (p, imgs) in psi {
        let imgs = imgs
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| {
                    Error::parse(
                        0,
                        format!("psi {p} is missing an image for generator {}", vars.name(i)),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        psi_full.insert(p, imgs);
    }
    let lambda = LambdaStructure::new(label, ring, psi_full, default_rule)?;
    Ok(StructureFile { lambda, conditions })
}

/// Conditions are sums of signed terms `k*f(c)` or `k*f'(c)`.
fn parse_condition(ln: usize, src: &str) -> Result<Condition> {
    let mut terms = Vec::new();
    let s: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut sign = BigInt::one();
    let mut expect_term = true;
    while i < s.len() {
        match s[i] {
            ' ' => i += 1,
            '+' if !expect_term => {
                sign = BigInt::one();
                expect_term = true;
                i += 1;
            }
            '-' => {
                sign = if expect_term { -sign } else { -BigInt::one() };
                expect_term = true;
                i += 1;
            }
            _ => {
                // optional coefficient
                let mut coeff = BigInt::one();
                if s[i].is_ascii_digit() {
                    let start = i;
                    while i < s.len() && s[i].is_ascii_digit() {
                        i += 1;
                    }
                    coeff = s[start..i].iter().collect::<String>().parse().unwrap();
                    while i < s.len() && s[i] == ' ' {
                        i += 1;
                    }
                    if i < s.len() && s[i] == '*' {
                        i += 1;
                        while i < s.len() && s[i] == ' ' {
                            i += 1;
                        }
                    }
                }
                if i >= s.len() || s[i] != 'f' {
                    return Err(Error::parse(ln, "condition term must be f(c) or f'(c)"));
                }
                i += 1;
                let order = if i < s.len() && s[i] == '\'' {
                    i += 1;
                    1u8
                } else {
                    0u8
                };
                if i >= s.len() || s[i] != '(' {
                    return Err(Error::parse(ln, "expected ( after f"));
                }
                i += 1;
                let start = i;
                while i < s.len() && s[i] != ')' {
                    i += 1;
                }
                if i >= s.len() {
                    return Err(Error::parse(ln, "unclosed evaluation point"));
                }
                let point: BigInt = s[start..i]
                    .iter()
                    .collect::<String>()
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(ln, "bad evaluation point"))?;
                i += 1;
                terms.push(CondTerm { coeff: sign.clone() * coeff, order, point });
                sign = BigInt::one();
                expect_term = false;
            }
        }
    }
    if terms.is_empty() {
        return Err(Error::parse(ln, "empty condition"));
    }
    Ok(Condition { label: src.trim().to_string(), terms })
}

pub fn serialize_structure(f: &StructureFile) -> String {
    let mut out = String::new();
    let ring = f.lambda.ring();
    out.push_str(&format!("base {}\n", ring.base()));
    out.push_str(&format!("gens {}\n", ring.vars().names().join(" ")));
    let laurent: Vec<&str> = (0..ring.vars().len())
        .filter(|&i| ring.vars().is_laurent(i))
        .map(|i| ring.vars().name(i))
        .collect();
    if !laurent.is_empty() {
        out.push_str(&format!("laurent {}\n", laurent.join(" ")));
    }
    for rel in ring.relations() {
        out.push_str(&format!("rel {rel}\n"));
    }
    for p in f.lambda.declared_primes() {
        for i in 0..ring.vars().len() {
            let img = f.lambda.psi_poly(p, i).expect("declared image");
            out.push_str(&format!("psi {p}: {} -> {img}\n", ring.vars().name(i)));
        }
    }
    match f.lambda.default_rule() {
        Some(DefaultRule::Toric) => out.push_str("default toric\n"),
        Some(DefaultRule::Identity) => out.push_str("default identity\n"),
        None => {}
    }
    for c in &f.conditions {
        out.push_str(&format!("cond {}\n", serialize_condition(c)));
    }
    out
}

fn serialize_condition(c: &Condition) -> String {
    use num_traits::Signed;
    let mut out = String::new();
    for (k, t) in c.terms.iter().enumerate() {
        let mag = t.coeff.abs();
        if t.coeff.is_negative() {
            out.push_str(if k == 0 { "-" } else { " - " });
        } else if k > 0 {
            out.push_str(" + ");
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(if t.order == 0 { "f(" } else { "f'(" });
        out.push_str(&t.point.to_string());
        out.push(')');
    }
    out
}

pub fn parse_fan(src: &str) -> Result<Fan> {
    let mut dim: Option<usize> = None;
    let mut rays: Vec<Vec<i64>> = Vec::new();
    let mut cones: Vec<Vec<usize>> = Vec::new();
    for (ln, raw) in src.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        match key {
            "dim" => {
                dim = Some(
                    rest.trim()
                        .parse()
                        .map_err(|_| Error::parse(ln, "bad dimension"))?,
                );
            }
            "ray" => {
                let v = rest
                    .split_whitespace()
                    .map(|t| t.parse::<i64>().map_err(|_| Error::parse(ln, "bad ray entry")))
                    .collect::<Result<Vec<_>>>()?;
                rays.push(v);
            }
            "cone" => {
                let c = rest
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| Error::parse(ln, "bad ray index")))
                    .collect::<Result<Vec<_>>>()?;
                cones.push(c);
            }
            other => return Err(Error::parse(ln, format!("unknown directive {other}"))),
        }
    }
    let dim = dim.ok_or_else(|| Error::parse(0, "missing dim line"))?;
    Fan::new(dim, rays, cones)
}

pub fn serialize_fan(fan: &Fan) -> String {
    let mut out = format!("dim {}\n", fan.rank());
    for r in fan.rays() {
        let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("ray {}\n", parts.join(" ")));
    }
    for c in fan.cones() {
        if c.is_empty() {
            continue;
        }
        let parts: Vec<String> = c.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!("cone {}\n", parts.join(" ")));
    }
    out
}
