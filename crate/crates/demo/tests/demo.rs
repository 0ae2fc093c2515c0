use netrobust_demo::{ladder_of, layout_of, preclusion_of, MAX_ORDER};

#[test]
fn layout_keeps_levels_and_positions() {
    let l = layout_of("dcell", 2, 2).unwrap();
    assert_eq!((l.nodes.len(), l.edges.len(), l.max_level), (42, 63, 2));
    assert!(l.nodes.iter().all(|p| (0.0..=1.0).contains(&p.x) && (0.0..=1.0).contains(&p.y)));
    assert_eq!(l.nodes[1].label, "(0,0,1)");
    let s = layout_of("star", 2, 4).unwrap();
    assert_eq!((s.nodes.len(), s.max_level), (12, 0));
}

#[test]
fn oversized_and_unknown_requests_are_rejected() {
    assert!(layout_of("dcell", 3, 2).unwrap_err().contains(&MAX_ORDER.to_string()));
    assert!(layout_of("torus", 1, 2).is_err());
}

#[test]
fn ladder_carries_cut_witnesses() {
    let rungs = ladder_of("dcell", 2, 2, 3).unwrap();
    let values: Vec<_> = rungs.iter().map(|r| r.value).collect();
    assert_eq!(values, vec![Some(3), Some(4), Some(5)]);
    assert!(rungs.iter().all(|r| r.cut.len() == r.value.unwrap()));

    let c6 = ladder_of("dcell", 1, 2, 4).unwrap();
    assert_eq!(c6.iter().map(|r| r.value).collect::<Vec<_>>(), vec![Some(2), Some(2), Some(2), None]);
}

#[test]
fn preclusion_reports_a_witness() {
    let p = preclusion_of("dcell", 2, 2, false).unwrap();
    assert_eq!((p.number, p.edges.len(), p.kind.as_deref()), (Some(3), 3, Some("Trivial")));
    let p = preclusion_of("dcell", 2, 2, true).unwrap();
    assert_eq!(p.number, Some(4));
    let p = preclusion_of("dcell", 1, 3, false).unwrap();
    assert_eq!((p.number, p.kind.as_deref()), (Some(3), Some("Trivial")));
}

#[test]
fn preclusion_limits_are_explicit() {
    let p = preclusion_of("dcell", 2, 3, false).unwrap();
    assert_eq!((p.number, p.note.as_deref()), (None, Some("search too large for the browser")));
    assert!(preclusion_of("star", 1, 3, false).unwrap_err().contains("odd order"));
    let p = preclusion_of("dcell", 1, 2, true).unwrap();
    assert_eq!((p.number, p.edges.len()), (Some(2), 2));
}
