use yangian_core::dsl::{parse_relation, parse_relation_file, render_relation};
use yangian_core::relcheck::suite::{builtin_suite, hopf_relations};

#[test]
fn builtin_suite_round_trips() {
    let entries: Vec<_> = builtin_suite().into_iter().chain(hopf_relations()).collect();
    assert!(entries.len() > 100);
    for e in &entries {
        let text = render_relation(&e.relation);
        let back = parse_relation(&text).unwrap_or_else(|err| panic!("{}: {text}: {err}", e.id));
        assert_eq!(back, e.relation, "{}", e.id);
        assert_eq!(render_relation(&back), text, "{}", e.id);
    }
}

#[test]
fn relation_files_keep_line_numbers() {
    let text = "# header\n\n[k1+(u), k1+(v)] = 0\n  {X+(u), X+(v)} = 0 # odd\n";
    let rels = parse_relation_file(text).unwrap();
    assert_eq!(rels.iter().map(|r| r.0).collect::<Vec<_>>(), vec![3, 4]);
}

#[test]
fn relation_file_errors_point_into_the_file() {
    let text = "[k1+(u), k1+(v)] = 0\nk1+(u) = k3+(v)\n";
    let e = parse_relation_file(text).unwrap_err();
    assert_eq!(e.span.line, 2);
    assert_eq!(e.span.column, 10);
    assert_eq!(&text[e.span.start..e.span.end], "k3");
}

/// (input, span start, span end, message fragment)
const ERRORS: &[(&str, usize, usize, &str)] = &[
    ("k1+(u", 5, 5, "end of input"),
    ("k1+(u) = ", 9, 9, "end of input"),
    ("k1+(u) = k3+(v)", 9, 11, "unknown name 'k3'"),
    ("k1+(u) = 0 0", 11, 12, "unexpected"),
    ("k1+(u) @ 0", 7, 8, "unexpected character '@'"),
    ("{k1+(u), k2+(v)} = 0", 0, 16, "odd operands"),
    ("e(u) = 0", 1, 2, "needs a sign"),
    ("k1+(u + 2 hbar) = 0", 10, 14, "unexpected"),
    ("delta(u, v", 10, 10, "end of input"),
    ("hbar^x = 0", 5, 6, "unexpected"),
    ("k1+(u + hbar/0) = 0", 13, 14, "zero denominator"),
    ("[k1+(u), k2+(v) = 0", 16, 17, "unexpected"),
    ("k1+(u) k1+(v) = 0", 7, 9, "unexpected"),
    ("k1+() = 0", 4, 5, "unexpected"),
];

#[test]
fn error_corpus_reports_spans() {
    assert!(ERRORS.len() >= 10);
    for &(input, start, end, fragment) in ERRORS {
        let e = parse_relation(input).expect_err(input);
        assert_eq!((e.span.start, e.span.end), (start, end), "{input}: {e}");
        assert!(e.message.contains(fragment), "{input}: {}", e.message);
        assert_eq!(e.span.line, 1);
        assert_eq!(e.span.column, start + 1, "{input}");
    }
}
