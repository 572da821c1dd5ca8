use splitbench::spec::{parse_config_str, Method, ProblemKind};
use splitbench::BenchError;

fn parse(text: &str) -> Result<splitbench::ProblemSpec, BenchError> {
    parse_config_str(text, "test.cfg")
}

fn field_error(result: Result<splitbench::ProblemSpec, BenchError>) -> (String, String) {
    match result {
        Err(BenchError::Field { field, msg }) => (field, msg),
        other => panic!("expected a field error, got {other:?}"),
    }
}

const MINIMAL: &str = "
kind = best_approx
z = 3.0 1.0

[set.C]
type = halfspace
normal = 1.0 0.0
offset = 1.0

[set.D]
type = halfspace
normal = 0.0 1.0
offset = 1.0
";

#[test]
fn minimal_spec_fills_documented_defaults() {
    let spec = parse(MINIMAL).unwrap();
    assert_eq!(spec.beta, 0.5);
    assert_eq!(spec.r0, None);
    assert!((spec.resolved_r0() - 0.99 * 2.0).abs() < 1e-12);
    assert_eq!(spec.tol, 1e-8);
    assert_eq!(spec.max_iter, 100_000);
    assert_eq!(spec.method, Method::Strengthened);
    assert_eq!(spec.seed, 0);
    assert_eq!(spec.dim, 2);
    assert!(spec.z0.is_none());
    assert!(spec.known_solution.is_none());
    assert!(matches!(spec.kind, ProblemKind::BestApprox { .. }));
}

#[test]
fn beta_outside_the_open_unit_interval_is_rejected() {
    let text = format!("beta = 1.2\n{MINIMAL}");
    let (field, msg) = field_error(parse(&text));
    assert_eq!(field, "beta");
    assert!(msg.contains("(0, 1)"), "unhelpful message: {msg}");
    assert!(msg.contains("1.2"), "message should echo the value: {msg}");
}

#[test]
fn r0_above_the_step_cap_is_rejected() {
    // At beta = 0.5 the cap is 2(1-beta)/beta = 2.
    let text = format!("r0 = 3\n{MINIMAL}");
    let (field, msg) = field_error(parse(&text));
    assert_eq!(field, "r0");
    assert!(msg.contains("2(1-beta)/beta"), "unhelpful message: {msg}");
    assert!(msg.contains('3'), "message should echo the value: {msg}");
    assert!(parse(&format!("r0 = 1.99\n{MINIMAL}")).is_ok());
    let (field, _) = field_error(parse(&format!("r0 = 0\n{MINIMAL}")));
    assert_eq!(field, "r0");
}

#[test]
fn parse_errors_carry_line_numbers() {
    let text = "kind = best_approx\nnot a key value line\n";
    match parse(text) {
        Err(BenchError::Parse { path, line, msg }) => {
            assert_eq!(path, "test.cfg");
            assert_eq!(line, 2);
            assert!(msg.contains("key = value"), "{msg}");
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn duplicate_keys_report_both_lines() {
    let text = format!("{MINIMAL}\noffset = 2.0\n");
    match parse(&text) {
        Err(BenchError::Parse { line, msg, .. }) => {
            assert!(msg.contains("duplicate"), "{msg}");
            assert!(msg.contains("set.D.offset"), "{msg}");
            assert!(line > 0);
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn unknown_keys_are_flagged_with_their_line() {
    let text = format!("{MINIMAL}\nradius = 2.0\n");
    match parse(&text) {
        Err(BenchError::Parse { msg, .. }) => {
            assert!(msg.contains("unknown key 'set.D.radius'"), "{msg}");
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn unterminated_section_header_is_rejected() {
    match parse("[set.C\ntype = ball\n") {
        Err(BenchError::Parse { line, msg, .. }) => {
            assert_eq!(line, 1);
            assert!(msg.contains("unterminated"), "{msg}");
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn missing_required_section_names_the_field() {
    let text = "
kind = best_approx
z = 3.0 1.0

[set.C]
type = halfspace
normal = 1.0 0.0
offset = 1.0
";
    let (field, msg) = field_error(parse(text));
    assert_eq!(field, "set.D.type");
    assert!(msg.contains("missing"), "{msg}");
}

#[test]
fn dimension_mismatches_are_caught() {
    let text = "
kind = best_approx
z = 3.0 1.0 5.0

[set.C]
type = halfspace
normal = 1.0 0.0
offset = 1.0

[set.D]
type = halfspace
normal = 0.0 1.0
offset = 1.0
";
    let (field, msg) = field_error(parse(text));
    assert!(msg.contains("dimension mismatch"), "{field}: {msg}");
}

#[test]
fn strong_weak_requires_ordered_moduli_and_no_anchor() {
    let base = "
kind = strong_weak
dim = 1

[function.f]
type = l1

[function.g]
type = zero
";
    let ok = format!("gamma = 2.0\nomega = 1.0\n{base}");
    let spec = parse(&ok).unwrap();
    assert_eq!(spec.z.as_slice(), &[0.0]);
    match &spec.kind {
        ProblemKind::StrongWeak { gamma, omega, .. } => {
            assert_eq!(*gamma, 2.0);
            assert_eq!(*omega, 1.0);
        }
        other => panic!("wrong kind: {other:?}"),
    }

    let bad = format!("gamma = 1.0\nomega = 1.0\n{base}");
    let (field, _) = field_error(parse(&bad));
    assert_eq!(field, "omega");

    let with_anchor = format!("gamma = 2.0\nomega = 1.0\nz = 1.0\n{base}");
    let (field, _) = field_error(parse(&with_anchor));
    assert_eq!(field, "z");
}

#[test]
fn strong_weak_without_any_dimension_hint_asks_for_dim() {
    let text = "
kind = strong_weak
gamma = 2.0
omega = 1.0

[function.f]
type = l1

[function.g]
type = zero
";
    let (field, msg) = field_error(parse(text));
    assert_eq!(field, "dim");
    assert!(msg.contains("dim"), "{msg}");
}

#[test]
fn linear_pair_rejects_nonlinear_operator_descriptions() {
    let text = "
kind = linear_pair
z = 1.0 2.0

[operator.A]
type = matrix
matrix = 1 0; 0 1

[operator.B]
type = normal_cone
set = ball
center = 0.0 0.0
radius = 1.0
";
    let (field, msg) = field_error(parse(text));
    assert_eq!(field, "operator.B.type");
    assert!(msg.contains("custom"), "{msg}");
}

#[test]
fn matrices_must_be_rectangular_and_square() {
    let ragged = "
kind = linear_pair
z = 1.0 2.0

[operator.A]
type = matrix
matrix = 1 0; 0
[operator.B]
type = zero
";
    let (field, msg) = field_error(parse(ragged));
    assert_eq!(field, "operator.A.matrix");
    assert!(msg.contains("same number of entries"), "{msg}");

    let rect = "
kind = linear_pair
z = 1.0 2.0

[operator.A]
type = matrix
matrix = 1 0 0; 0 1 0
[operator.B]
type = zero
";
    let (field, msg) = field_error(parse(rect));
    assert_eq!(field, "operator.A.matrix");
    assert!(msg.contains("square"), "{msg}");
}

#[test]
fn vectors_reject_non_numeric_tokens() {
    let text = MINIMAL.replace("z = 3.0 1.0", "z = 3.0 oops");
    let (field, msg) = field_error(parse(&text));
    assert_eq!(field, "z");
    assert!(msg.contains("oops"), "{msg}");
}

#[test]
fn unknown_kind_method_and_types_list_the_alternatives() {
    let (field, msg) = field_error(parse("kind = prox\nz = 1.0\n"));
    assert_eq!(field, "kind");
    assert!(msg.contains("prox_sum"), "{msg}");

    let (field, msg) = field_error(parse(&format!("method = newton\n{MINIMAL}")));
    assert_eq!(field, "method");
    assert!(msg.contains("strengthened"), "{msg}");

    let bad_set = MINIMAL.replace("type = ball", "type = cube");
    let text = bad_set.replace("type = halfspace", "type = cube");
    let (field, msg) = field_error(parse(&text));
    assert_eq!(field, "set.C.type");
    assert!(msg.contains("halfspace"), "{msg}");
}

#[test]
fn functions_parse_with_nested_indicator_sets() {
    let text = "
kind = prox_sum
z = 2.0 0.0
seed = 7

[function.f]
type = indicator
set = ball
center = 0.0 0.0
radius = 1.0

[function.g]
type = quadratic
center = 1.0 0.0
weight = 2.0
";
    let spec = parse(text).unwrap();
    match &spec.kind {
        ProblemKind::ProxSum { .. } => {}
        other => panic!("wrong kind: {other:?}"),
    }
    assert_eq!(spec.seed, 7);
}

#[test]
fn comments_blank_lines_and_spacing_are_tolerated() {
    let text = "
# leading comment

kind   =   best_approx
z=3.0 1.0

  [set.C]
# inner comment
type = halfspace
normal = 1.0 0.0
offset = 1.0

[set.D]
type = ball
center = 0.0 0.0
radius = 1.0
";
    assert!(parse(text).is_ok());
}

#[test]
fn custom_kind_accepts_mixed_operator_types() {
    let text = "
kind = custom
z = 1.0 1.0
seed = 3

[operator.A]
type = random_monotone
scale = 0.5

[operator.B]
type = subdifferential
function = l1
weight = 0.3
";
    let spec = parse(text).unwrap();
    assert!(matches!(spec.kind, ProblemKind::Custom { .. }));
}
