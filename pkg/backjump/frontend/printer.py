"""Writes a model back in the native format; parse_model(print_model(m)) gives back m."""
from backjump.models.model import ConstraintKind, ConstraintSpec, ModelFile, VariableDecl


def _ints(values) -> str:
    return ",".join(str(v) for v in values)


def print_declaration(decl: VariableDecl) -> str:
    values = decl.values
    if decl.is_range and values[-1] - values[0] + 1 == len(values):
        return f"var {decl.name} in {values[0]}..{values[-1]};"
    return f"var {decl.name} in {{{_ints(values)}}};"


def print_constraint(spec: ConstraintSpec) -> str:
    kind = spec.kind
    names = ",".join(spec.scope)
    if kind in (ConstraintKind.eq, ConstraintKind.neq, ConstraintKind.leq):
        call = f"{kind.value}({names},{spec.constant})"
    elif kind in (ConstraintKind.linear_leq, ConstraintKind.linear_eq):
        op = "<=" if kind == ConstraintKind.linear_leq else "="
        call = f'linear([{_ints(spec.coefficients)}],[{names}],"{op}",{spec.constant})'
    elif kind == ConstraintKind.alldifferent:
        call = f"alldifferent({names})"
    else:
        pairs = ",".join(f"[{a},{b}]" for a, b in spec.tuples)
        call = f"forbid({names},[{pairs}])"
    return f"constraint {call};"


def print_model(model: ModelFile) -> str:
    lines = []
    if model.name:
        lines.append(f"# {model.name}")
    lines.extend(print_declaration(d) for d in model.variables)
    lines.extend(print_constraint(c) for c in model.constraints)
    lines.append(f"solve {model.goal.value};")
    return "\n".join(lines) + "\n"
