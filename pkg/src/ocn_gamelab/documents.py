"""Strict JSON document formats for every domain object the CLI moves.

Each document is a JSON object with a ``kind`` tag and a fixed field
set; unknown fields and type mismatches are rejected with a path
diagnostic like ``$.rules[3].delta: expected integer``.  Serialization
is canonical: sorted keys, compact separators, entry lists in a fixed
order, one trailing newline.  Certificates embed the SHA-256 of their
net's canonical serialization so a stale certificate cannot be
verified against the wrong net.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .countdown import CountdownGame
from .lts import Lts
from .ocnsim import BeltCertificate, PlaneBelt
from .rgame import ADAM, EVE, RGame, SocnRGame
from .seqdesc import SeqDescription, TuringMachine
from .socn import Rule, Socn


class DocumentError(ValueError):
    """Malformed document; the message starts with the field path."""


KINDS = ("lts", "rgame", "socn-rgame", "countdown", "seqdesc", "socn", "tm",
         "certificate")


@dataclass
class CertificateDoc:
    """A belt certificate tied to its net by content hash."""

    certificate: BeltCertificate
    net_sha256: str


@dataclass
class InputDocument:
    kind: str
    value: object


# ---------------------------------------------------------------------------
# Parsing helpers


def _obj(value, path, required, optional=()):
    if not isinstance(value, dict):
        raise DocumentError(f"{path}: expected object")
    for key in required:
        if key not in value:
            raise DocumentError(f"{path}.{key}: missing required field")
    allowed = set(required) | set(optional)
    for key in value:
        if key not in allowed:
            raise DocumentError(f"{path}.{key}: unknown field")
    return value


def _str(value, path) -> str:
    if not isinstance(value, str):
        raise DocumentError(f"{path}: expected string")
    return value


def _int(value, path) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{path}: expected integer")
    return value


def _list(value, path) -> list:
    if not isinstance(value, list):
        raise DocumentError(f"{path}: expected array")
    return value


def _str_list(value, path) -> list:
    return [_str(v, f"{path}[{i}]") for i, v in enumerate(_list(value, path))]


def _owner(value, path) -> str:
    owner = _str(value, path)
    if owner not in (EVE, ADAM):
        raise DocumentError(f"{path}: owner must be \"{EVE}\" or \"{ADAM}\"")
    return owner


# ---------------------------------------------------------------------------
# Per-kind parsers


def _parse_lts(obj) -> Lts:
    _obj(obj, "$", ("kind", "states", "actions", "transitions"))
    transitions = []
    for i, t in enumerate(_list(obj["transitions"], "$.transitions")):
        path = f"$.transitions[{i}]"
        _obj(t, path, ("from", "action", "to"))
        transitions.append((_str(t["from"], f"{path}.from"),
                            _str(t["action"], f"{path}.action"),
                            _str(t["to"], f"{path}.to")))
    return Lts(states=_str_list(obj["states"], "$.states"),
               actions=_str_list(obj["actions"], "$.actions"),
               transitions=transitions)


def _parse_rgame(obj) -> RGame:
    _obj(obj, "$", ("kind", "vertices", "edges", "targets"))
    vertices = []
    owner = {}
    for i, v in enumerate(_list(obj["vertices"], "$.vertices")):
        path = f"$.vertices[{i}]"
        _obj(v, path, ("name", "owner"))
        name = _str(v["name"], f"{path}.name")
        vertices.append(name)
        owner[name] = _owner(v["owner"], f"{path}.owner")
    edges = []
    for i, e in enumerate(_list(obj["edges"], "$.edges")):
        path = f"$.edges[{i}]"
        _obj(e, path, ("from", "to"))
        edges.append((_str(e["from"], f"{path}.from"), _str(e["to"], f"{path}.to")))
    targets = set(_str_list(obj["targets"], "$.targets"))
    return RGame(vertices=vertices, owner=owner, edges=edges, targets=targets)


def _parse_counter_game(obj, kind):
    _obj(obj, "$", ("kind", "states", "rules", "target"))
    states = []
    eve = set()
    for i, s in enumerate(_list(obj["states"], "$.states")):
        path = f"$.states[{i}]"
        _obj(s, path, ("name", "owner"))
        name = _str(s["name"], f"{path}.name")
        states.append(name)
        if _owner(s["owner"], f"{path}.owner") == EVE:
            eve.add(name)
    rules = []
    for i, r in enumerate(_list(obj["rules"], "$.rules")):
        path = f"$.rules[{i}]"
        _obj(r, path, ("from", "delta", "to"))
        delta = _int(r["delta"], f"{path}.delta")
        if kind == "countdown" and delta >= 0:
            raise DocumentError(f"{path}.delta: rule delta must be negative")
        rules.append((_str(r["from"], f"{path}.from"), delta,
                      _str(r["to"], f"{path}.to")))
    target = _str(obj["target"], "$.target")
    cls = CountdownGame if kind == "countdown" else SocnRGame
    return cls(states=states, eve=eve, rules=rules, target=target)


def _parse_seqdesc(obj) -> SeqDescription:
    _obj(obj, "$", ("kind", "alphabet", "hash", "blank", "m", "rules", "default"))
    m = _int(obj["m"], "$.m")
    if m < 3:
        raise DocumentError("$.m: m >= 3 required")
    rules = {}
    for i, r in enumerate(_list(obj["rules"], "$.rules")):
        path = f"$.rules[{i}]"
        _obj(r, path, ("triple", "out"))
        triple = _list(r["triple"], f"{path}.triple")
        if len(triple) != 3:
            raise DocumentError(f"{path}.triple: expected exactly 3 symbols")
        key = tuple(_str(t, f"{path}.triple[{j}]") for j, t in enumerate(triple))
        if key in rules:
            raise DocumentError(f"{path}.triple: duplicate rule for {key}")
        rules[key] = _str(r["out"], f"{path}.out")
    return SeqDescription(alphabet=_str_list(obj["alphabet"], "$.alphabet"),
                          hash_symbol=_str(obj["hash"], "$.hash"),
                          blank=_str(obj["blank"], "$.blank"),
                          rules=rules,
                          default=_str(obj["default"], "$.default"),
                          m=m)


def _parse_socn(obj) -> Socn:
    _obj(obj, "$", ("kind", "states", "actions", "rules"))
    rules = []
    for i, r in enumerate(_list(obj["rules"], "$.rules")):
        path = f"$.rules[{i}]"
        _obj(r, path, ("from", "action", "delta", "to"))
        rules.append(Rule(frm=_str(r["from"], f"{path}.from"),
                          action=_str(r["action"], f"{path}.action"),
                          delta=_int(r["delta"], f"{path}.delta"),
                          to=_str(r["to"], f"{path}.to")))
    return Socn(states=_str_list(obj["states"], "$.states"),
                actions=_str_list(obj["actions"], "$.actions"),
                rules=rules)


def _parse_tm(obj) -> TuringMachine:
    _obj(obj, "$", ("kind", "states", "input_alphabet", "tape_alphabet", "blank",
                    "start", "accept", "reject", "delta"))
    delta = {}
    for i, t in enumerate(_list(obj["delta"], "$.delta")):
        path = f"$.delta[{i}]"
        _obj(t, path, ("state", "read", "next", "write", "move"))
        key = (_str(t["state"], f"{path}.state"), _str(t["read"], f"{path}.read"))
        move = _int(t["move"], f"{path}.move")
        if move not in (-1, 0, 1):
            raise DocumentError(f"{path}.move: expected -1, 0, or 1")
        if key in delta:
            raise DocumentError(f"{path}: duplicate transition for {key}")
        delta[key] = (_str(t["next"], f"{path}.next"),
                      _str(t["write"], f"{path}.write"), move)
    return TuringMachine(states=_str_list(obj["states"], "$.states"),
                         start=_str(obj["start"], "$.start"),
                         accept=_str(obj["accept"], "$.accept"),
                         reject=_str(obj["reject"], "$.reject"),
                         input_alphabet=_str_list(obj["input_alphabet"],
                                                  "$.input_alphabet"),
                         tape_alphabet=_str_list(obj["tape_alphabet"],
                                                 "$.tape_alphabet"),
                         blank=_str(obj["blank"], "$.blank"),
                         delta=delta)


def _parse_certificate(obj) -> CertificateDoc:
    _obj(obj, "$", ("kind", "net_sha256", "height", "planes"))
    height = _int(obj["height"], "$.height")
    planes = {}
    for i, p in enumerate(_list(obj["planes"], "$.planes")):
        path = f"$.planes[{i}]"
        _obj(p, path, ("left", "right", "belt"), ())
        key = (_str(p["left"], f"{path}.left"), _str(p["right"], f"{path}.right"))
        if key in planes:
            raise DocumentError(f"{path}: duplicate plane {key}")
        belt = _obj(p["belt"], f"{path}.belt", ("kind", "base"),
                    ("period", "inf_from"))
        kind = _str(belt["kind"], f"{path}.belt.kind")
        if kind not in ("SF", "VF", "HF"):
            raise DocumentError(f"{path}.belt.kind: expected SF, VF, or HF")
        base = [_int(v, f"{path}.belt.base[{j}]")
                for j, v in enumerate(_list(belt["base"], f"{path}.belt.base"))]
        period = None
        if "period" in belt:
            raw = _list(belt["period"], f"{path}.belt.period")
            if len(raw) != 2:
                raise DocumentError(f"{path}.belt.period: expected [dx, dy]")
            period = (_int(raw[0], f"{path}.belt.period[0]"),
                      _int(raw[1], f"{path}.belt.period[1]"))
        inf_from = (_int(belt["inf_from"], f"{path}.belt.inf_from")
                    if "inf_from" in belt else None)
        if kind == "SF" and period is None:
            raise DocumentError(f"{path}.belt: SF belt needs a period")
        if kind == "HF" and inf_from is None:
            raise DocumentError(f"{path}.belt: HF belt needs inf_from")
        planes[key] = PlaneBelt(kind=kind, base=base, period=period,
                                inf_from=inf_from)
    return CertificateDoc(certificate=BeltCertificate(height=height, planes=planes),
                          net_sha256=_str(obj["net_sha256"], "$.net_sha256"))


_PARSERS = {
    "lts": _parse_lts,
    "rgame": _parse_rgame,
    "socn-rgame": lambda obj: _parse_counter_game(obj, "socn-rgame"),
    "countdown": lambda obj: _parse_counter_game(obj, "countdown"),
    "seqdesc": _parse_seqdesc,
    "socn": _parse_socn,
    "tm": _parse_tm,
    "certificate": _parse_certificate,
}


def parse_document(data) -> InputDocument:
    """Strict parse; raises DocumentError with a path diagnostic."""
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="replace")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"$: invalid JSON ({exc})") from None
    if not isinstance(obj, dict):
        raise DocumentError("$: expected top-level object")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise DocumentError(f"$.kind: expected one of {', '.join(KINDS)}")
    return InputDocument(kind=kind, value=_PARSERS[kind](obj))


# ---------------------------------------------------------------------------
# Serialization


def _lts_payload(lts: Lts):
    return {"kind": "lts", "states": list(lts.states), "actions": list(lts.actions),
            "transitions": [{"from": s, "action": a, "to": t}
                            for s, a, t in lts.transitions]}


def _rgame_payload(game: RGame):
    return {"kind": "rgame",
            "vertices": [{"name": v, "owner": game.owner[v]} for v in game.vertices],
            "edges": [{"from": s, "to": t} for s, t in game.edges],
            "targets": sorted(game.targets)}


def _counter_game_payload(game: SocnRGame, kind: str):
    return {"kind": kind,
            "states": [{"name": s, "owner": EVE if s in game.eve else ADAM}
                       for s in game.states],
            "rules": [{"from": frm, "delta": z, "to": to}
                      for frm, z, to in game.rules],
            "target": game.target}


def _seqdesc_payload(d: SeqDescription):
    return {"kind": "seqdesc", "alphabet": list(d.alphabet), "hash": d.hash_symbol,
            "blank": d.blank, "m": d.m,
            "rules": [{"triple": list(k), "out": d.rules[k]}
                      for k in sorted(d.rules)],
            "default": d.default}


def _socn_payload(net: Socn):
    return {"kind": "socn", "states": list(net.states), "actions": list(net.actions),
            "rules": [{"from": r.frm, "action": r.action, "delta": r.delta,
                       "to": r.to} for r in net.rules]}


def _tm_payload(machine: TuringMachine):
    return {"kind": "tm", "states": list(machine.states),
            "input_alphabet": list(machine.input_alphabet),
            "tape_alphabet": list(machine.tape_alphabet),
            "blank": machine.blank, "start": machine.start,
            "accept": machine.accept, "reject": machine.reject,
            "delta": [{"state": q, "read": g, "next": q2, "write": g2, "move": mv}
                      for (q, g), (q2, g2, mv) in sorted(machine.delta.items())]}


def _certificate_payload(doc: CertificateDoc):
    planes = []
    for (left, right), belt in sorted(doc.certificate.planes.items()):
        body = {"kind": belt.kind, "base": [int(v) for v in belt.base]}
        if belt.period is not None:
            body["period"] = [int(belt.period[0]), int(belt.period[1])]
        if belt.inf_from is not None:
            body["inf_from"] = int(belt.inf_from)
        planes.append({"left": left, "right": right, "belt": body})
    return {"kind": "certificate", "net_sha256": doc.net_sha256,
            "height": doc.certificate.height, "planes": planes}


def serialize_document(doc: InputDocument) -> bytes:
    """Canonical bytes: sorted keys, compact separators, one newline."""
    builders = {
        "lts": _lts_payload,
        "rgame": _rgame_payload,
        "socn-rgame": lambda v: _counter_game_payload(v, "socn-rgame"),
        "countdown": lambda v: _counter_game_payload(v, "countdown"),
        "seqdesc": _seqdesc_payload,
        "socn": _socn_payload,
        "tm": _tm_payload,
        "certificate": _certificate_payload,
    }
    if doc.kind not in builders:
        raise DocumentError(f"$.kind: cannot serialize kind {doc.kind!r}")
    payload = builders[doc.kind](doc.value)
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return (text + "\n").encode("utf-8")


def net_sha256(net: Socn) -> str:
    """Content hash of the net's canonical socn document."""
    return hashlib.sha256(serialize_document(InputDocument("socn", net))).hexdigest()
