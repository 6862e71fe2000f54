use cayley_core::cayley::{
    build_cayley_graph, inverse_closed_subsets, inverse_pairs, left_multiplication, ConnectionSet,
};
use cayley_core::certfile::CertificateFile;
use cayley_core::constructions::{
    abelian_parts, all_witnesses, find_witness_y, prop1_certificate, single_coset_sets, thm2_certificate,
    translations_certificate,
};
use cayley_core::group::{build_group, catalog, invariant_factor_lists, FiniteGroup};
use cayley_core::oracle::{automorphism_group, verify_certificate, AutMode, DEFAULT_MAX_AUT};
use cayley_core::perm::{compose, invert, is_regular};

fn all_sets(g: &FiniteGroup) -> impl Iterator<Item = ConnectionSet> + '_ {
    inverse_closed_subsets(g, inverse_pairs(g, |_| true))
}

#[test]
fn prop1_relations_for_small_even_circulants() {
    for n in [4usize, 6, 8, 10, 12] {
        let g = FiniteGroup::cyclic(n).unwrap();
        let mut count = 0;
        for set in all_sets(&g) {
            let graph = build_cayley_graph(&set);
            let cert = prop1_certificate(&graph).unwrap();
            let [alpha, beta] = cert.perms.generators() else { panic!("two generators") };
            assert!(alpha.pow(n as u64 / 2).is_identity());
            assert!(beta.pow(2).is_identity());
            let conj = compose(beta, &compose(alpha, beta).unwrap()).unwrap();
            assert_eq!(conj, invert(alpha));
            assert!(verify_certificate(&cert).passed(), "n={n} {:?}", set.tokens());
            count += 1;
        }
        assert_eq!(count, 1 << ((n - 2) / 2 + 1));
    }
}

#[test]
fn thm2_certificates_and_witness_iff() {
    for g in catalog_dihedral(12) {
        for set in all_sets(&g) {
            let graph = build_cayley_graph(&set);
            let witnesses = all_witnesses(&g, &set).unwrap();
            for y in g.coset_elements() {
                let beta = left_multiplication(&g, &y).unwrap();
                assert_eq!(
                    graph.graph().is_automorphism(&beta),
                    witnesses.contains(&y),
                    "{g} {:?} y={}",
                    set.tokens(),
                    g.token(&y)
                );
            }
            if let Some(y) = find_witness_y(&g, &set).unwrap() {
                let cert = thm2_certificate(&graph, &y).unwrap();
                assert!(cert.perms.is_abelian());
                assert_eq!(cert.perms.order(), 2 * g.abelian_order());
                assert!(is_regular(&cert.perms, g.order()));
                assert!(verify_certificate(&cert).passed());
            }
            if set.coset_part().len() == 1 {
                assert!(!witnesses.is_empty());
            }
        }
    }
}

fn catalog_dihedral(max_order: usize) -> Vec<FiniteGroup> {
    let mut out = Vec::new();
    for n in (4..=max_order).step_by(2) {
        out.extend(invariant_factor_lists(n / 2).iter().map(|f| FiniteGroup::gendih(f).unwrap()));
    }
    out
}

#[test]
fn single_coset_sets_always_admit_a_witness() {
    for g in catalog_dihedral(16) {
        for set in single_coset_sets(&g, abelian_parts(&g)).unwrap() {
            assert!(find_witness_y(&g, &set).unwrap().is_some());
        }
    }
}

#[test]
fn translations_certificates_verify() {
    for n in 2..=12 {
        for g in catalog(n) {
            let set = all_sets(&g).nth(1).unwrap();
            let cert = translations_certificate(&build_cayley_graph(&set));
            assert!(verify_certificate(&cert).passed(), "{g}");
        }
    }
}

#[test]
fn certificates_sit_inside_the_automorphism_group() {
    let cases = [("gendih:4", "1,3,x:0"), ("gendih:5", "1,4,x:0,x:2,x:3"), ("gendih:3x2", "1.0,2.0,x:0.1")];
    for (spec, tokens) in cases {
        let g = build_group(spec).unwrap();
        let set = ConnectionSet::parse(&g, tokens).unwrap();
        let graph = build_cayley_graph(&set);
        let y = find_witness_y(&g, &set).unwrap().expect("witness");
        let cert = thm2_certificate(&graph, &y).unwrap();
        let aut = automorphism_group(graph.graph(), AutMode::Refined, DEFAULT_MAX_AUT).unwrap();
        let elems = aut.elements().unwrap();
        assert!(cert.perms.elements().iter().all(|p| elems.binary_search(p).is_ok()));
    }
}

#[test]
fn certificate_file_round_trip_and_tamper() {
    let graph = cayley_core::cayley::cayley_graph("gendih:4", "1,3,x:0").unwrap();
    let cert = thm2_certificate(&graph, &graph.group().x().unwrap()).unwrap();
    let file = CertificateFile::from(&cert);
    let text = file.to_json().unwrap();
    let back = CertificateFile::from_json(&text).unwrap();
    assert_eq!(back, file);
    assert!(back.verify().unwrap().passed());

    let mut tampered = back.clone();
    tampered.claimed_type = "gendih:4".into();
    let report = tampered.verify().unwrap();
    assert!(!report.check("isomorphism").unwrap().passed);

    let mut tampered = back;
    tampered.elements.pop();
    let report = tampered.verify().unwrap();
    assert!(!report.check("closure").unwrap().passed);
    assert!(!report.check("regular").unwrap().passed);
}
