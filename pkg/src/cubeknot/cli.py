"""``cubeknot`` command line.

Every subcommand reads files or literal arguments, calls one library
function and prints JSON.  Exit codes: 0 success, 2 contract violation,
64 usage error (including an unknown subcommand), 65 malformed input.
"""
import argparse
import json
import os
import sys

from . import braids, catalog, free, invariants, motions, splice
from .cubes import compose_operad, config_from_json, config_to_json
from .tube import build_tube_map, kappa, knot_from_json, knot_to_json, pushoff

SCHEMA = "cubeknot/1"
EX_CONTRACT, EX_USAGE, EX_DATAERR = 2, 64, 65


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(obj):
    out = {"schema": SCHEMA}
    out.update(obj)
    sys.stdout.write(json.dumps(out, indent=2) + "\n")


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_knot(ref, base_dir=None):
    """A knot file, or the name of a built-in knot."""
    path = ref if base_dir is None or os.path.isabs(ref) else os.path.join(base_dir, ref)
    if not os.path.exists(path) and ref in catalog.names():
        return catalog.load(ref)
    obj = _read_json(path)
    if isinstance(obj, dict) and isinstance(obj.get("knot"), dict):
        obj = obj["knot"]  # a record printed by another subcommand
    try:
        return knot_from_json(obj)
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_config(path):
    try:
        return config_from_json(_read_json(path))
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _text_arg(value):
    """Literal text, or the contents of a file when given as ``@path``."""
    if value.startswith("@"):
        try:
            with open(value[1:]) as fh:
                return fh.read()
        except OSError as exc:
            raise InputError(str(exc)) from exc
    return value


def _element(value):
    try:
        return free.parse_element(_text_arg(value))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _tree(value):
    try:
        return splice.parse_tree(_text_arg(value))
    except splice.SpliceError as exc:
        raise InputError(str(exc)) from exc


def _braid(args):
    try:
        return braids.parse_braid(args.word, args.strands)
    except braids.BraidError as exc:
        raise InputError(str(exc)) from exc


def _knot_record(f, schedule_start=0, with_invariants=True):
    out = {"knot": knot_to_json(f)}
    if with_invariants:
        out["determinant"] = invariants.knot_determinant(f, schedule_start=schedule_start)
    return out


# -- subcommands -------------------------------------------------------------------

def cmd_compose(args):
    outer = _load_config(args.outer)
    inners = [_load_config(p) for p in args.inners]
    return {"config": config_to_json(compose_operad(outer, inners))}


def cmd_act(args):
    config = _load_config(args.config)
    knots = [_load_knot(k) for k in args.knots]
    return _knot_record(kappa(config, knots), args.shear_start)


def cmd_invariants(args):
    f = _load_knot(args.knot)
    s = args.shear_start
    d = invariants.knot_diagram(f, schedule_start=s)
    push = f.pushoff if f.pushoff is not None else pushoff(build_tube_map(f))
    return {"determinant": invariants.determinant(d), "writhe": invariants.writhe(d),
            "framing": invariants.framing_number(f, schedule_start=s),
            "linking": invariants.linking_number(
                invariants.long_pair_diagram(f.vertices, push.vertices, s)),
            "crossings": len(d.crossings), "gauss_code": invariants.gauss_code(d)}


def cmd_normalize(args):
    e = free.normalize(_element(args.element))
    return {"element": free.format_element(e), "labels": list(e.labels)}


def cmd_pi0(args):
    return {"pi0": free.pi0(_element(args.element)).as_dict()}


def _registry(path):
    raw = _read_json(path)
    if not isinstance(raw, dict):
        raise InputError(f"{path}: registry must map labels to knot files")
    base = os.path.dirname(os.path.abspath(path))
    return {label: _load_knot(ref, base) for label, ref in raw.items()}


def cmd_evaluate(args):
    e = _element(args.element)
    f = free.evaluate(e, _registry(args.registry))
    return _knot_record(f, args.shear_start)


def cmd_braid_perm(args):
    b = _braid(args)
    p = braids.to_permutation(b)
    return {"braid": str(b), "strands": b.strands, "permutation": [i + 1 for i in p],
            "cycles": braids.cycles(p), "pure": braids.is_pure(b)}


def cmd_braid_act(args):
    b = _braid(args)
    try:
        w = braids.parse_free_word(args.free_word)
    except braids.BraidError as exc:
        raise InputError(str(exc)) from exc
    return {"braid": str(b), "word": str(w), "image": str(braids.artin_action(b, w))}


def cmd_monodromy(args):
    b = _braid(args)
    knots = [_load_knot(k) for k in args.knots]
    iso = motions.monodromy(b, knots, args.resolution, workers=args.workers)
    out = {"braid": str(b), "frames": len(iso.frames),
           "determinant": iso.determinants[0], "framing": iso.framings[0],
           "overlapping_frames": sum(map(motions.overlapping_projections, iso.path.frames))}
    if args.out:
        motions.export_animation(iso, args.out, obj=args.obj)
        out["directory"] = args.out
    return out


def cmd_homotopy_type(args):
    t = _tree(args.tree)
    return {"tree": t.sexpr(), "homotopy_type": splice.homotopy_type(t).to_json(),
            "prime_summands": splice.prime_summand_count(t)}


def cmd_pi1(args):
    t = _tree(args.tree)
    return {"tree": t.sexpr(), "pi1": splice.pi1_extension(t).to_json()}


def cmd_catalog(args):
    if args.name is None:
        return {"knots": list(catalog.names())}
    try:
        f = catalog.load(args.name, args.framing)
    except KeyError as exc:
        raise InputError(exc.args[0]) from exc
    return _knot_record(f, args.shear_start)


def build_parser():
    p = _Parser(prog="cubeknot", description="Little cubes acting on framed long knots.")
    p.add_argument("--shear-start", type=int, default=0,
                   help="first entry of the projection shear schedule to try (default 0)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("compose", help="operad composition of cube configurations")
    s.add_argument("outer")
    s.add_argument("inners", nargs="*")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("act", help="kappa: compose knots through a 2-cube configuration")
    s.add_argument("config")
    s.add_argument("knots", nargs="*", help="knot files or built-in names")
    s.set_defaults(func=cmd_act)

    s = sub.add_parser("invariants", help="determinant, writhe, framing, core/push-off linking")
    s.add_argument("knot")
    s.set_defaults(func=cmd_invariants)

    for name, func in (("normalize", cmd_normalize), ("pi0", cmd_pi0)):
        s = sub.add_parser(name, help=f"free-algebra {name}")
        s.add_argument("element", help="'(cubes...)[labels...]' or @file")
        s.set_defaults(func=func)

    s = sub.add_parser("evaluate", help="realize a free-algebra element as a knot")
    s.add_argument("element")
    s.add_argument("registry", help="JSON map from labels to knot files or built-in names")
    s.set_defaults(func=cmd_evaluate)

    s = sub.add_parser("braid-perm", help="permutation of a braid word")
    s.add_argument("word", help="e.g. 's1 s2^-1 s1'")
    s.add_argument("--strands", type=int)
    s.set_defaults(func=cmd_braid_perm)

    s = sub.add_parser("braid-act", help="Artin action on a free-group word")
    s.add_argument("word")
    s.add_argument("free_word", help="e.g. 'x1 x2^-1'")
    s.add_argument("--strands", type=int)
    s.set_defaults(func=cmd_braid_act)

    s = sub.add_parser("monodromy", help="knot isotopy along a braid's cube motion")
    s.add_argument("word")
    s.add_argument("knots", nargs="+")
    s.add_argument("--strands", type=int)
    s.add_argument("--resolution", type=int, default=motions.DEFAULT_RESOLUTION)
    s.add_argument("--out", help="directory for per-frame knot files and index.json")
    s.add_argument("--obj", action="store_true", help="also write OBJ line geometry")
    s.add_argument("--workers", type=int, default=None)
    s.set_defaults(func=cmd_monodromy)

    for name, func in (("homotopy-type", cmd_homotopy_type), ("pi1", cmd_pi1)):
        s = sub.add_parser(name, help=f"{name} of a splice tree")
        s.add_argument("tree", help="s-expression or @file")
        s.set_defaults(func=func)

    s = sub.add_parser("catalog", help="emit a built-in knot (or list them)")
    s.add_argument("name", nargs="?")
    s.add_argument("--framing", type=int, default=0)
    s.set_defaults(func=cmd_catalog)
    return p


def _error(kind, message, code):
    sys.stdout.write(json.dumps({"schema": SCHEMA, "error": {"kind": kind, "message": message}},
                                indent=2) + "\n")
    return code


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _error("usage", str(exc), EX_USAGE)
    if args.command is None:
        return _error("usage", "no subcommand given", EX_USAGE)
    if getattr(args, "resolution", 2) < 2:
        return _error("usage", "resolution must be at least 2", EX_USAGE)
    try:
        _emit(args.func(args))
    except InputError as exc:
        return _error("input", str(exc), EX_DATAERR)
    except (ValueError, KeyError) as exc:
        return _error(type(exc).__name__, str(exc), EX_CONTRACT)
    return 0


if __name__ == "__main__":
    sys.exit(main())
