use jetsec::calculus::{partner_with, Membership};
use jetsec::combinatorics::check_bijection;
use jetsec::solver::{solve_subspace, SubspaceQuery};
use jetsec::text::{format_laurent, format_rational, parse_poly};
use jetsec::theorems::{
    conjecture_probe, dim_formula_p2, theorem_basis_p2, verify_corollary, verify_prop_cis, verify_theorem_p2,
    IdentityInstance, IdentityReport,
};
use jetsec::{derive, CompatibilityWitness, Composition, InversionEngine, JetPolynomial, LaurentExpansion};
use serde_json::Value;

use crate::report::{Report, Table};
use crate::{BasisSource, CliError, DimsSource, PolyAtLevel, Prop, Range, Verb};

pub fn dispatch(verb: Verb) -> Result<Report, CliError> {
    match verb {
        Verb::Expand { poly } => expand(&poly),
        Verb::Partner(args) => membership("partner", &args),
        Verb::Member(args) => membership("member", &args),
        Verb::Derive { poly } => {
            let rho = parse_poly(&poly)?;
            let mut r = Report::new("derive");
            r.field("poly", rho.to_string());
            r.field("derivative", derive(&rho).to_string());
            Ok(r)
        }
        Verb::Basis { n, d, source } => basis(n, d, source),
        Verb::Dims { n, d, source } => dims(&n, d, source),
        Verb::Solve { n, d, l } => solve(n, d, l),
        Verb::Identity {
            prop,
            n,
            k2,
            bijection_max_n,
        } => identity(prop, &n, k2.as_ref(), bijection_max_n),
        Verb::Bijection { n, mu } => bijection(n, &mu),
        Verb::Probe { n, d } => probe(&n, d),
    }
}

fn expand(poly: &str) -> Result<Report, CliError> {
    let rho = parse_poly(poly)?;
    let e = InversionEngine::new().expand(&rho);
    let mut r = Report::new("expand");
    r.field("poly", rho.to_string());
    r.field("expansion", format_laurent(&e));
    r.field("minX0Power", e.min_x0_power().map_or(Value::Null, Value::from));
    let mut t = Table::new("terms", &["numerator", "x0Power", "coefficient"]);
    for (k, c) in e.terms() {
        t.push(vec![
            JetPolynomial::monomial(k.numerator.clone()).to_string().into(),
            k.x0_power.into(),
            format_rational(c).into(),
        ]);
    }
    r.tables.push(t);
    Ok(r)
}

fn membership(verb: &str, args: &PolyAtLevel) -> Result<Report, CliError> {
    let rho = parse_poly(&args.poly)?;
    let mut engine = InversionEngine::new();
    let lowest = engine.expand(&rho).min_x0_power();
    let outcome = partner_with(&mut engine, &rho, args.n)?;
    let mut r = Report::new(verb);
    r.field("poly", rho.to_string());
    r.field("n", args.n);
    r.field("member", outcome.is_member());
    r.field("minX0Power", lowest.map_or(Value::Null, Value::from));
    match outcome {
        Membership::Member(rho2) => {
            r.field("partner", rho2.to_string());
            if verb == "partner" {
                let witness = CompatibilityWitness {
                    n: args.n,
                    rho1: rho.clone(),
                    rho2: rho2.clone(),
                };
                r.field("verified", witness.verify());
                r.pass = witness.verify();
                let mut t = Table::new(
                    "pairing",
                    &["d", "component", "partnerDegree", "partnerComponent"],
                );
                for d in 0..=args.n {
                    let part = rho.homogeneous_component(d);
                    if part.is_zero() {
                        continue;
                    }
                    let dual = rho2.homogeneous_component(args.n - d);
                    t.push(vec![
                        d.into(),
                        part.to_string().into(),
                        (args.n - d).into(),
                        dual.to_string().into(),
                    ]);
                }
                r.tables.push(t);
            }
        }
        Membership::NotAMember {
            min_x0_power,
            witness: (key, c),
        } => {
            debug_assert_eq!(Some(min_x0_power), lowest);
            let term = LaurentExpansion::term(key.numerator, key.x0_power, c);
            r.field("witness", format_laurent(&term));
        }
    }
    Ok(r)
}

fn basis_table(basis: &[JetPolynomial]) -> Result<Table, CliError> {
    let mut t = Table::new("basis", &["index", "l", "element"]);
    for (i, b) in basis.iter().enumerate() {
        t.push(vec![(i + 1).into(), b.sd()?.into(), b.to_string().into()]);
    }
    Ok(t)
}

fn basis(n: u32, d: u32, source: BasisSource) -> Result<Report, CliError> {
    let basis = match source {
        BasisSource::Theorem if d != 2 => {
            return Err(CliError::Usage(format!(
                "the closed-form basis is for d=2, got d={d}"
            )))
        }
        BasisSource::Theorem => theorem_basis_p2(n)?,
        BasisSource::Solver => solve_subspace(SubspaceQuery::new(n, d, None)?)?.basis,
    };
    let mut r = Report::new("basis");
    r.field("n", n);
    r.field("d", d);
    r.field(
        "source",
        if source == BasisSource::Theorem {
            "theorem"
        } else {
            "solver"
        },
    );
    r.field("dimension", basis.len());
    r.tables.push(basis_table(&basis)?);
    Ok(r)
}

fn dims(range: &Range, d: u32, source: DimsSource) -> Result<Report, CliError> {
    let formula = match (source, d) {
        (DimsSource::Formula, d) if d != 2 => {
            return Err(CliError::Usage(format!(
                "the closed formula is for d=2, got d={d}"
            )))
        }
        (DimsSource::Solver, _) => false,
        (_, d) => d == 2,
    };
    let solver = source != DimsSource::Formula;
    let mut r = Report::new("dims");
    r.field("n", format!("{}..{}", range.0.start(), range.0.end()));
    r.field("d", d);
    let mut t = Table::new("dims", &["n", "d", "l", "formula", "solver"]);
    for n in range.0.clone() {
        if formula && n < 2 {
            return Err(CliError::Usage(format!(
                "the closed formula needs n >= 2, got n={n}"
            )));
        }
        let solved = if solver {
            Some(solve_subspace(SubspaceQuery::new(n, d, None)?)?)
        } else {
            None
        };
        for l in 0..=d * n.saturating_sub(1) {
            let f = formula.then(|| dim_formula_p2(n, l));
            let s = solved.as_ref().map(|s| s.levels[l as usize].dimension as u64);
            if let (Some(f), Some(s)) = (f, s) {
                r.pass &= f == s;
            }
            t.push(vec![n.into(), d.into(), l.into(), f.into(), s.into()]);
        }
    }
    r.tables.push(t);
    Ok(r)
}

fn solve(n: u32, d: u32, l: Option<u32>) -> Result<Report, CliError> {
    let s = solve_subspace(SubspaceQuery::new(n, d, l)?)?;
    let mut r = Report::new("solve");
    r.field("n", n);
    r.field("d", d);
    r.field("l", l);
    r.field("dimension", s.dimension);
    r.field("candidateCount", s.candidate_count);
    r.tables.push(basis_table(&s.basis)?);
    let mut t = Table::new("levels", &["l", "dimension", "candidates"]);
    for lvl in &s.levels {
        t.push(vec![lvl.l.into(), lvl.dimension.into(), lvl.candidates.into()]);
    }
    r.tables.push(t);
    Ok(r)
}

fn instance_table(name: &str, instances: &[IdentityInstance]) -> Table {
    let mut t = Table::new(name, &["parameters", "left", "right", "pass", "detail"]);
    for i in instances {
        t.push(vec![
            i.parameters.clone().into(),
            i.left.clone().into(),
            i.right.clone().into(),
            i.pass.into(),
            i.detail.clone().into(),
        ]);
    }
    t
}

fn identity(prop: Prop, range: &Range, k2: Option<&Range>, bijection_max_n: u32) -> Result<Report, CliError> {
    let (lo, hi) = (*range.0.start(), *range.0.end());
    let mut grid = format!("n={lo}..{hi}");
    let mut parts = Vec::new();
    let statement = match prop {
        Prop::Cis => {
            grid.push_str(&format!(" bijection n<={bijection_max_n}"));
            for n in range.0.clone() {
                parts.push(verify_prop_cis(n, n <= bijection_max_n)?);
            }
            "cis"
        }
        Prop::Corollary => {
            if let Some(k) = k2 {
                grid.push_str(&format!(" k2={}..{}", k.0.start(), k.0.end()));
            } else {
                grid.push_str(" k2=1..n-3");
            }
            for n in range.0.clone() {
                let ks = match k2 {
                    Some(k) => k.0.clone(),
                    None => 1..=n.saturating_sub(3),
                };
                for k in ks {
                    parts.push(verify_corollary(n, k)?);
                }
            }
            "corollary"
        }
        Prop::Theorem => {
            for n in range.0.clone() {
                parts.push(verify_theorem_p2(n)?);
            }
            "theorem"
        }
    };
    let merged = IdentityReport::merge(statement, grid, parts);
    let mut r = Report::new("identity");
    r.pass = merged.pass;
    r.field("statement", merged.statement.clone());
    r.field("grid", merged.grid.clone());
    r.field("instances", merged.instances.len());
    r.field("failures", merged.instances.iter().filter(|i| !i.pass).count());
    r.tables.push(instance_table("instances", &merged.instances));
    if prop == Prop::Corollary {
        r.field("witnesses", merged.witnesses.len());
        r.tables.push(instance_table("witnesses", &merged.witnesses));
    }
    Ok(r)
}

fn parse_mu(s: &str) -> Result<Composition, CliError> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("μ must be a comma list of naturals, got {s:?}")))?;
    Ok(Composition::new(parts))
}

fn bijection(n: u32, mu: &str) -> Result<Report, CliError> {
    let mu = parse_mu(mu)?;
    let check = check_bijection(n, &mu, true)?;
    let mut r = Report::new("bijection");
    r.pass = check.is_bijective();
    r.field("n", n);
    r.field("mu", mu.to_string());
    r.field("domainSize", check.domain_size);
    r.field("codomainSize", check.codomain_size);
    r.field("imageSize", check.image_size);
    r.field("bijective", check.is_bijective());
    let mut t = Table::new("mapping", &["omega", "sigma"]);
    for (w, s) in &check.mapping {
        t.push(vec![w.to_string().into(), s.to_string().into()]);
    }
    r.tables.push(t);
    Ok(r)
}

fn probe(range: &Range, d: u32) -> Result<Report, CliError> {
    let mut r = Report::new("probe");
    r.field("n", format!("{}..{}", range.0.start(), range.0.end()));
    r.field("d", d);
    let mut t = Table::new(
        "probe",
        &[
            "n",
            "d",
            "dimension",
            "binomial",
            "matchesBinomial",
            "symmetry",
            "support",
            "consistent",
            "grading",
        ],
    );
    for n in range.0.clone() {
        let p = conjecture_probe(n, d)?;
        r.pass &= p.consistent;
        let grading = p
            .grading
            .iter()
            .map(|(l, dim)| format!("{l}:{dim}"))
            .collect::<Vec<_>>()
            .join(" ");
        t.push(vec![
            n.into(),
            d.into(),
            p.solver_dimension.into(),
            p.binomial_value.to_string().into(),
            p.matches_binomial().into(),
            p.symmetry_pass.into(),
            p.support_pass.into(),
            p.consistent.into(),
            grading.into(),
        ]);
    }
    r.tables.push(t);
    Ok(r)
}
