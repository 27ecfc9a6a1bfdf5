"""JSON exchange formats for data, characters, module descriptors and matrices.

Field elements are written as coefficient arrays over F_p (lowest degree first);
plain integers are accepted on input and read as elements of the prime field.
"""
from __future__ import annotations

import json

from .characters import AffineCharacter, ZkCharacter, check_character, make_xi, stabilizer_xi
from .errors import ParameterError
from .field import FiniteField
from .hecke_data import GenericHeckeData, OmegaGen, ZKappa, check


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def elem_to_json(F: FiniteField, code: int):
    return F.coeffs(code)


def elem_from_json(F: FiniteField, obj) -> int:
    if isinstance(obj, bool):
        raise ParameterError("field element cannot be a boolean")
    if isinstance(obj, int):
        return F.from_int(obj)
    if isinstance(obj, list) and all(isinstance(c, int) for c in obj):
        if len(obj) > F.k:
            raise ParameterError(f"field element {obj} has more than {F.k} coefficients")
        return F.from_coeffs([c % F.p for c in obj])
    raise ParameterError(f"malformed field element {obj!r}")


def matrix_to_json(F, M):
    return [[elem_to_json(F, x) for x in row] for row in M]


def matrix_from_json(F, obj, n: int | None = None):
    if not isinstance(obj, list) or any(not isinstance(r, list) for r in obj):
        raise ParameterError("matrix must be a list of rows")
    M = [[elem_from_json(F, x) for x in row] for row in obj]
    if n is not None and (len(M) != n or any(len(r) != n for r in M)):
        raise ParameterError(f"matrix must be {n}x{n}")
    return M


def _int_matrix(obj, n, what):
    try:
        M = tuple(tuple(int(x) for x in row) for row in obj)
    except (TypeError, ValueError):
        raise ParameterError(f"{what} must be an integer matrix") from None
    if len(M) != n or any(len(r) != n for r in M):
        raise ParameterError(f"{what} must be {n}x{n}")
    return M


def _vec(obj, n, what):
    try:
        v = tuple(int(x) for x in obj)
    except (TypeError, ValueError):
        raise ParameterError(f"{what} must be an integer vector") from None
    if len(v) != n:
        raise ParameterError(f"{what} must have length {n}")
    return v


# -- Hecke data -----------------------------------------------------------------------


def data_to_json(data: GenericHeckeData) -> dict:
    F = data.field
    Z = data.z
    omega = []
    for j, g in enumerate(data.omega):
        comms = {
            data.omega[k].label: list(v) for (i, k), v in sorted(data.commutators.items()) if i == j and any(v)
        }
        omega.append({
            "label": g.label,
            "order": g.order,
            "power": list(g.power),
            "auto": [list(r) for r in g.auto],
            "perm": [data.s_aff[t] for t in g.perm],
            "corrections": [list(c) for c in g.corrections],
            "commutators": comms,
        })
    return {
        "field": F.to_json(),
        "s_aff": list(data.s_aff),
        "coxeter": [list(r) for r in data.coxeter],
        "z_kappa": {"invariants": list(Z.orders), "labels": list(Z.labels)},
        "lift_conj": [[list(r) for r in A] for A in data.lift_conj],
        "c_param": [[[list(z), elem_to_json(F, v)] for z, v in sorted(c.items())] for c in data.c_param],
        "omega": omega,
    }


def data_from_json(obj) -> GenericHeckeData:
    """Parse and validate; raises ParameterError listing every violation."""
    try:
        F = FiniteField.from_json(obj["field"])
        s_aff = tuple(str(s) for s in obj["s_aff"])
        n = len(s_aff)
        cox = _int_matrix(obj["coxeter"], n, "coxeter")
        zk = obj["z_kappa"]
        orders = tuple(int(d) for d in zk["invariants"])
        labels = tuple(str(l) for l in zk.get("labels", [f"t{i}" for i in range(len(orders))]))
        Z = ZKappa(orders, labels)
        r = Z.ngens
        if len(obj["lift_conj"]) != n or len(obj["c_param"]) != n:
            raise ParameterError("lift_conj and c_param need one entry per reflection")
        lift_conj = tuple(_int_matrix(A, r, "lift_conj entry") for A in obj["lift_conj"])
        c_param = []
        for entry in obj["c_param"]:
            c = {}
            for z, v in entry:
                key = Z.reduce(_vec(z, r, "c_param support element"))
                c[key] = F.add(c.get(key, 0), elem_from_json(F, v))
            c_param.append({z: v for z, v in c.items() if v})
        index = {s: i for i, s in enumerate(s_aff)}
        labels_w = [str(g["label"]) for g in obj["omega"]]
        omega, comms = [], {}
        for j, g in enumerate(obj["omega"]):
            try:
                perm = tuple(index[str(t)] for t in g["perm"])
            except KeyError as exc:
                raise ParameterError(f"omega {labels_w[j]}: unknown reflection {exc}") from None
            if len(perm) != n:
                raise ParameterError(f"omega {labels_w[j]}: perm needs {n} entries")
            if len(g["corrections"]) != n:
                raise ParameterError(f"omega {labels_w[j]}: corrections need {n} entries")
            omega.append(OmegaGen(
                labels_w[j],
                int(g["order"]),
                Z.reduce(_vec(g.get("power", [0] * r), r, "power")),
                _int_matrix(g["auto"], r, "auto"),
                perm,
                tuple(Z.reduce(_vec(c, r, "correction")) for c in g["corrections"]),
            ))
            for other, v in g.get("commutators", {}).items():
                if other not in labels_w:
                    raise ParameterError(f"omega {labels_w[j]}: commutator with unknown generator {other}")
                k = labels_w.index(other)
                v = Z.reduce(_vec(v, r, "commutator"))
                if k > j:
                    comms[(j, k)] = v
                elif k < j:
                    comms[(k, j)] = Z.reduce(tuple(-x for x in v))  # [b, a] = [a, b]^-1 in Z_kappa
                else:
                    raise ParameterError(f"omega {labels_w[j]}: commutator with itself")
    except ParameterError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParameterError(f"malformed data JSON: {type(exc).__name__}: {exc}") from None
    data = GenericHeckeData(s_aff, cox, Z, lift_conj, tuple(c_param), tuple(omega), comms, F)
    return check(data)


# -- characters and descriptors -------------------------------------------------------------


def chi_from_json(data: GenericHeckeData, obj) -> ZkCharacter:
    if not isinstance(obj, list):
        raise ParameterError("chi must be a list of values, one per Z_kappa generator")
    return check_character(data, ZkCharacter(tuple(elem_from_json(data.field, v) for v in obj)))


def xi_to_json(data, xi: AffineCharacter) -> dict:
    return {
        "chi": [elem_to_json(data.field, v) for v in xi.chi.values],
        "j_set": [data.s_aff[s] for s in sorted(xi.j_set)],
    }


def xi_from_json(data, obj) -> AffineCharacter:
    try:
        return make_xi(data, chi_from_json(data, obj["chi"]), obj.get("j_set", []))
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParameterError(f"malformed character JSON: {exc}") from None


def stabilizer_words(data, xi) -> list[str]:
    G = data.omega_group()
    return [G.word(w) for w in stabilizer_xi(data, xi).gen_words]


def descriptor_to_json(data, m) -> dict:
    out = xi_to_json(data, m.xi)
    out["v_dim"] = m.v_dim
    out["v_mats"] = {w: matrix_to_json(data.field, M) for w, M in zip(stabilizer_words(data, m.xi), m.v_mats)}
    return out


def descriptor_from_json(data, obj):
    from .ext_ss import SupersingularModuleDescriptor, check_descriptor

    xi = xi_from_json(data, obj)
    try:
        d = int(obj.get("v_dim", 1))
        given = obj.get("v_mats", {})
    except (TypeError, ValueError, AttributeError) as exc:
        raise ParameterError(f"malformed descriptor JSON: {exc}") from None
    words = stabilizer_words(data, xi)
    G = data.omega_group()
    lookup = {}
    for w, M in given.items():
        try:
            key = G.word(G.parse_word(w))
        except ParameterError:
            raise ParameterError(f"v_mats key {w!r} is not an Omega word") from None
        if isinstance(M, (int, list)) and not (isinstance(M, list) and M and isinstance(M[0], list)):
            M = [[M]]  # a scalar for 1-dimensional V
        lookup[key] = matrix_from_json(data.field, M, d)
    missing = [w for w in words if w not in lookup]
    extra = [w for w in lookup if w not in words]
    if missing or extra:
        raise ParameterError(
            f"v_mats must be keyed by the stabilizer generator words {words}; missing {missing}, unexpected {extra}"
        )
    mats = tuple(tuple(tuple(r) for r in lookup[w]) for w in words)
    return check_descriptor(data, SupersingularModuleDescriptor(xi.chi, xi.j_set, d, mats))
