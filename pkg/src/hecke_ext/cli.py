"""Command-line front end. Every command prints {"status", "payload", "trace"} as JSON.

Exit codes: 0 success, 2 malformed input or failed validation, 3 internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import serialize as ser
from .errors import InconsistencyError, ParameterError

EXIT_INPUT = 2
EXIT_INCONSISTENT = 3


class InputError(ParameterError):
    pass


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _write(path: str, obj) -> None:
    with open(path, "w") as fh:
        fh.write(ser.dumps(obj))


def _data(path):
    return ser.data_from_json(_load(path))


# -- commands ------------------------------------------------------------------------------


def cmd_build(args):
    from .hecke_data import build_gl_n

    if args.family != "gl_n":
        raise InputError(f"unknown family {args.family!r}; only gl_n is available")
    data = build_gl_n(args.n, args.q)
    obj = ser.data_to_json(data)
    if args.output:
        _write(args.output, obj)
        return {"written": args.output, "s_aff": list(data.s_aff), "z_kappa": list(data.z.orders)}, []
    return obj, []


def cmd_validate(args):
    from .hecke_data import validate

    data = _data(args.data)  # raises with the violation list
    return {"valid": not validate(data), "s_aff": list(data.s_aff), "z_kappa": list(data.z.orders)}, []


def cmd_ext_aff(args):
    from .ext_aff import dim_ext1_aff
    from .oracle import brute_force_ext1, character_module

    data = _data(args.data)
    xi1 = ser.xi_from_json(data, _load(args.xi1))
    xi2 = ser.xi_from_json(data, _load(args.xi2))
    res = dim_ext1_aff(data, xi1, xi2)
    payload = res.to_json(data)
    trace = []
    if args.check:
        b = brute_force_ext1(data, character_module(data, xi1), character_module(data, xi2), "aff_only")
        trace.append({"check": "oracle", "value": b})
        if b != res.dim_ext1:
            raise InconsistencyError(f"closed form {res.dim_ext1} differs from the oracle {b}")
    return payload, trace


def _descriptors(args):
    data = _data(args.data)
    return data, ser.descriptor_from_json(data, _load(args.m1)), ser.descriptor_from_json(data, _load(args.m2))


def cmd_ext_ss(args):
    from .ext_ss import dim_ext1_supersingular, dim_hom_supersingular
    from .oracle import brute_force_ext1, induced_module

    data, m1, m2 = _descriptors(args)
    br = dim_ext1_supersingular(data, m1, m2)
    payload = br.to_json(data) if args.breakdown else {"total": br.total}
    payload["hom"] = dim_hom_supersingular(data, m1, m2)
    trace = []
    if args.check:
        b = brute_force_ext1(data, induced_module(data, m1), induced_module(data, m2))
        trace.append({"check": "oracle", "value": b})
        if b != br.total:
            raise InconsistencyError(f"assembled total {br.total} differs from the oracle {b}")
    return payload, trace


def cmd_oracle(args):
    from .oracle import brute_force_ext1, character_module, induced_module

    data = _data(args.data)
    scope = "aff_only" if args.aff_only else "full"
    mods = []
    for path in (args.m1, args.m2):
        obj = _load(path)
        if "mats" in obj:
            from .oracle import MatrixModule

            M = MatrixModule.from_json(obj)
            M.mats = {g: ser.matrix_from_json(data.field, A, M.dim) for g, A in obj["mats"].items()}
        elif "v_dim" in obj or "v_mats" in obj:
            M = induced_module(data, ser.descriptor_from_json(data, obj))
        else:
            M = character_module(data, ser.xi_from_json(data, obj))
        mods.append(M)
    return {"dim_ext1": brute_force_ext1(data, mods[0], mods[1], scope), "scope": scope,
            "dims": [mods[0].dim, mods[1].dim]}, []


def cmd_stabilizer(args):
    from .characters import stabilizer_xi

    data = _data(args.data)
    xi = ser.xi_from_json(data, _load(args.xi))
    st = stabilizer_xi(data, xi)
    G = data.omega_group()
    return {
        "generator_words": [G.word(w) for w in st.gen_words],
        "orders": list(st.group.orders),
        "orbit": [ser.xi_to_json(data, _xi(key)) for key in st.orbit_words],
        "coset_words": [G.word(w) for w in st.coset_words],
    }, []


def _xi(key):
    from .characters import AffineCharacter, ZkCharacter

    return AffineCharacter(ZkCharacter(key[0]), key[1])


def cmd_plan(args):
    from .planner import SimpleModuleTriple, reduce_simple_ext, root_system

    root = root_system(args.root)
    t1 = SimpleModuleTriple.from_json(_load(args.t1))
    t2 = SimpleModuleTriple.from_json(_load(args.t2))
    plan = reduce_simple_ext(root, t1, t2, args.i)
    return plan.to_json(), plan.trace


def parse_group(spec: str):
    """"Z,Z/2,Z/3" or "0,2,3" (0 = infinite cyclic)."""
    from .zlinalg import FgAbelianGroup

    orders = []
    for part in spec.split(","):
        part = part.strip()
        if part in ("Z", "0"):
            orders.append(0)
        elif part.startswith("Z/"):
            orders.append(int(part[2:]))
        elif part.isdigit():
            orders.append(int(part))
        else:
            raise InputError(f"cannot parse group factor {part!r}")
    if any(o < 0 for o in orders):
        raise InputError("orders must be nonnegative")
    return FgAbelianGroup(tuple(orders))


def field_from_spec(obj):
    from .field import FiniteField, find_irreducible, prime_power

    if "min_poly" in obj:
        return FiniteField.from_json(obj)
    if "q" in obj:
        pp = prime_power(int(obj["q"]))
        if pp is None:
            raise InputError(f"q={obj['q']} is not a prime power")
        p, k = pp
    else:
        p, k = int(obj["p"]), int(obj.get("k", 1))
    return FiniteField(p, k, find_irreducible(p, k))


def cmd_h1(args):
    from .zlinalg import h1_abelian

    G = parse_group(args.group)
    obj = _load(args.action)
    try:
        F = field_from_spec(obj["field"])
        dim = int(obj["dim"])
        mats = [ser.matrix_from_json(F, M, dim) for M in obj["mats"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed action JSON: {exc}") from None
    if len(mats) != G.ngens:
        raise InputError(f"action needs {G.ngens} matrices, got {len(mats)}")
    return {"dim_h1": h1_abelian(G, mats, F, dim)}, []


def cmd_quotient(args):
    from .hecke_data import quotient_data

    data = _data(args.data)
    keep = [s.strip() for s in args.keep.split(",") if s.strip()]
    gens = []
    for part in (args.subgroup or "").split(";"):
        if part.strip():
            try:
                gens.append(tuple(int(x) for x in part.split(",")))
            except ValueError:
                raise InputError(f"cannot parse subgroup generator {part!r}") from None
            if len(gens[-1]) != data.z.ngens:
                raise InputError(f"subgroup generator {part!r} needs {data.z.ngens} entries")
    new = quotient_data(data, keep, gens)
    obj = ser.data_to_json(new)
    if args.output:
        _write(args.output, obj)
        return {"written": args.output, "s_aff": list(new.s_aff), "z_kappa": list(new.z.orders)}, []
    return obj, []


# -- entry point ---------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hecke-ext", description="Ext^1 between simple supersingular Hecke modules.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build Hecke data for a standard family")
    b.add_argument("family", choices=["gl_n"])
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--q", type=int, required=True)
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("validate", help="check every invariant of a data file")
    v.add_argument("--data", required=True)
    v.set_defaults(func=cmd_validate)

    a = sub.add_parser("ext-aff", help="Ext^1 between two characters of the affine subalgebra")
    a.add_argument("--data", required=True)
    a.add_argument("--xi1", required=True)
    a.add_argument("--xi2", required=True)
    a.add_argument("--check", action="store_true", help="compare with the brute-force oracle")
    a.set_defaults(func=cmd_ext_aff)

    s = sub.add_parser("ext-ss", help="Ext^1 between two supersingular modules")
    s.add_argument("--data", required=True)
    s.add_argument("--m1", required=True)
    s.add_argument("--m2", required=True)
    s.add_argument("--breakdown", action="store_true", help="print the per-coset terms")
    s.add_argument("--check", action="store_true", help="compare with the brute-force oracle")
    s.set_defaults(func=cmd_ext_ss)

    o = sub.add_parser("oracle", help="brute-force Ext^1 from the defining relations")
    o.add_argument("--data", required=True)
    o.add_argument("--m1", required=True)
    o.add_argument("--m2", required=True)
    o.add_argument("--aff-only", action="store_true")
    o.set_defaults(func=cmd_oracle)

    st = sub.add_parser("stabilizer", help="stabilizer generator words of a character (keys for v_mats)")
    st.add_argument("--data", required=True)
    st.add_argument("--xi", required=True)
    st.set_defaults(func=cmd_stabilizer)

    pl = sub.add_parser("plan", help="reduce Ext^i between simple modules to the supersingular case")
    pl.add_argument("--root", required=True, help="type string such as A2, B3, E8")
    pl.add_argument("--i", type=int, required=True)
    pl.add_argument("--t1", required=True)
    pl.add_argument("--t2", required=True)
    pl.set_defaults(func=cmd_plan)

    h = sub.add_parser("h1", help="H^1 of a finitely generated abelian group")
    h.add_argument("--group", required=True, help='e.g. "Z,Z/2"')
    h.add_argument("--action", required=True)
    h.set_defaults(func=cmd_h1)

    q = sub.add_parser("quotient", help="keep some reflections and divide Z_kappa by a subgroup")
    q.add_argument("--data", required=True)
    q.add_argument("--keep", required=True, help="comma-separated reflection names")
    q.add_argument("--subgroup", default="", help='generators as "1,-1,0;0,1,-1"')
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_quotient)
    return p


def run(argv=None) -> tuple[dict, int]:
    args = build_parser().parse_args(argv)
    try:
        payload, trace = args.func(args)
        return {"status": "ok", "payload": payload, "trace": trace}, 0
    except InconsistencyError as exc:
        return {"status": "error", "payload": {"message": str(exc)}, "trace": []}, EXIT_INCONSISTENT
    except ParameterError as exc:
        return {"status": "error", "payload": {"message": str(exc)}, "trace": []}, EXIT_INPUT


def main(argv=None) -> int:
    result, code = run(argv)
    sys.stdout.write(json.dumps(result, indent=1, sort_keys=True) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
