"""Command line: ``catca run``, ``catca check`` and ``catca demo``.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error, 3 typing error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import render
from .ca import (CellularAutomaton, FunctionConfig, SparseConfig, apply, elementary_ca, iterate,
                 linear_ca, realize)
from .checkers import Rejection, check_equivariance, check_uniform, chl_extract, report
from .errors import CapabilityError, InfiniteUniverseError, MembershipError, TypingError
from .gca import (GeneralizedCA, as_gca, compose_gca, factorize, make_gca, pullback_gca,
                  weak_product, weak_product_mediator)
from .groups import MatrixHom, Subset, TableHom, ZPower, ball, cyclic
from .sampling import random_dense_config, random_sparse_config
from .serialize import (FormatError, ca_from_json, ca_to_json, config_from_json, config_to_json,
                        dumps, elem_to_json, group_from_json,
                        morphism_from_json, object_from_json)
from .suites import SUITES, run_suite

DEMOS = ("rule90", "rule110", "subsample", "weakprod")


class UsageError(Exception):
    pass


def _json_arg(text: str):
    """Inline JSON, or a path to a JSON file."""
    text = text.strip()
    if text.startswith(("{", "[")):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"bad inline JSON: {exc}") from exc
    try:
        return json.loads(Path(text).read_text())
    except OSError as exc:
        raise FormatError(f"cannot read {text}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{text} is not JSON: {exc}") from exc


def _write(out: Path | None, name: str, data, stdout=True):
    """Write to ``out/name`` if an output directory was given, else to standard output."""
    if out is None:
        if isinstance(data, bytes):
            sys.stdout.flush()
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
        elif stdout:
            sys.stdout.write(data)
        return None
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    if isinstance(data, bytes):
        path.write_bytes(data)
    else:
        path.write_text(data)
    return path


# -- run ----------------------------------------------------------------------

def load_automaton(args):
    if args.rule is not None:
        return elementary_ca(args.rule)
    if args.ca is None and args.inline is None:
        raise UsageError("one of --ca, --inline or --rule is required")
    doc = _json_arg(args.inline if args.inline is not None else args.ca)
    if not isinstance(doc, dict):
        raise FormatError("automaton must be a JSON object")
    if args.group is not None:
        doc = {**doc, "group": _json_arg(args.group)}
    return ca_from_json(doc)


def initial_config(tau, init: str, seed: int, radius: int):
    G, A = tau.source_group, tau.A
    cat = A.category
    elems = cat.elements(A)
    if init == "single":
        one = elems[1] if len(elems) > 1 else elems[0]
        return SparseConfig(G, A, {G.identity: one}, elems[0])
    if init == "random":
        rng = np.random.default_rng(seed)
        if G.is_finite:
            return random_dense_config(G, A, rng)
        return random_sparse_config(G, A, rng, radius)
    doc = _json_arg(init)
    return config_from_json(doc, G, A)


def frames_on(configs, cells):
    return [c.window(cells) for c in configs]


def cmd_run(args) -> int:
    tau = load_automaton(args)
    if args.steps < 0:
        raise UsageError("--steps must be non-negative")
    if isinstance(tau, GeneralizedCA) and tau.G != tau.H and args.steps > 1:
        raise TypingError("a generalized CA between different universes cannot be iterated")
    c0 = initial_config(tau, args.init, args.seed, args.radius)
    configs = iterate(tau, c0, args.steps)
    G, A = tau.target_group, tau.B
    cells = render.window_cells(G, args.radius, _json_arg(args.window) if args.window else None)
    frames = frames_on(configs, cells)
    out = Path(args.out) if args.out else None
    if args.format == "text":
        _write(out, "frames.txt", render.text_frames(G, A, cells, frames))
    elif args.format == "json":
        _write(out, "frames.json", render.json_frames(G, A, cells, frames))
    else:
        images = render.pgm_frames(G, A, cells, frames)
        if out is None and len(images) > 1:
            raise UsageError("several PGM frames need --out DIR")
        for k, img in enumerate(images):
            _write(out, "frames.pgm" if len(images) == 1 else f"frame-{k:04d}.pgm", img)
    if args.save_state:
        Path(args.save_state).write_text(dumps(state_json(c0, configs[-1], cells)) + "\n")
    return 0


def state_json(c0, last, cells) -> dict:
    """The final configuration restricted to the window.

    Outside the window the saved state falls back to the initial default, so a
    resumed run is exact on the window shrunk by one neighborhood radius per step.
    """
    G, A = last.group, last.alphabet
    default = c0.default if isinstance(c0, SparseConfig) else last.at(cells[0])
    return config_to_json(SparseConfig(G, A, dict(zip(cells, last.window(cells))), default))


# -- check --------------------------------------------------------------------

def _suite_params(args) -> dict:
    params = _json_arg(args.params) if args.params else {}
    if not isinstance(params, dict):
        raise FormatError("--params must be a JSON object")
    if args.groups:
        params["groups"] = args.groups.split(",")
    if args.instances:
        params["instances"] = args.instances.split(",")
    return params


def check_automaton(tau, seed: int, radius: int) -> list:
    if isinstance(tau, GeneralizedCA):
        tau, _ = factorize(tau)
    reports = []
    if tau.G.is_finite:
        reports.append(check_equivariance(tau, "morphism"))
        R = realize(tau)
        reports.append(check_uniform(R, tau.G, tau.A, tau.B))
        back = chl_extract(R, tau.G, tau.A, tau.B)
        ok = isinstance(back, CellularAutomaton) and realize(back) == R
        reports.append(report("chl-roundtrip", {"group": repr(tau.G), "instance": tau.category.name},
                              None, 1, None if ok else {"reason": "roundtrip mismatch"},
                              neighborhood=list(back.S) if ok else None))
    else:
        reports.append(check_equivariance(tau, "ball", radius=radius, seed=seed))
    return reports


def check_morphism(doc: dict) -> list:
    """CHL on a morphism ``A^G -> B^G`` stored as ``{"group", "A", "B", "f"}``."""
    for k in ("group", "A", "B", "f"):
        if k not in doc:
            raise FormatError(f"morphism file lacks {k!r}")
    G = group_from_json(doc["group"])
    A, B = object_from_json(doc["A"]), object_from_json(doc["B"])
    if not G.is_finite:
        raise InfiniteUniverseError("morphism files need a finite group")
    cat = A.category
    f = morphism_from_json(doc["f"], cat.power(A, G.elements()).carrier, cat.power(B, G.elements()).carrier)
    out = chl_extract(f, G, A, B)
    params = {"group": repr(G), "instance": cat.name}
    if isinstance(out, Rejection):
        return [report("chl-extract", params, None, 1,
                       {"g": elem_to_json(G, out.g), "reason": out.reason})]
    return [report("chl-extract", params, None, 1, None, automaton=ca_to_json(out))]


def cmd_check(args) -> int:
    reports = []
    if args.morphism:
        reports = check_morphism(_json_arg(args.morphism))
    elif args.ca or args.inline or args.rule is not None:
        reports = check_automaton(load_automaton(args), args.seed, args.radius)
    else:
        name = args.suite
        if name != "all" and name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; known: all, {', '.join(SUITES)}")
        params = _suite_params(args)
        names = list(SUITES) if name == "all" else [name]
        for n in names:
            r = run_suite(n, params, args.seed)
            reports.append(r)
            sys.stdout.write(r.to_json() + "\n")
            sys.stdout.flush()
        stream = "".join(r.to_json() + "\n" for r in reports)
        if args.out:
            _write(Path(args.out), "report.jsonl", stream)
        return 0 if all(r.passed for r in reports) else 1
    stream = "".join(r.to_json() + "\n" for r in reports)
    sys.stdout.write(stream)
    if args.out:
        _write(Path(args.out), "report.jsonl", stream)
    return 0 if all(r.passed for r in reports) else 1


# -- demos --------------------------------------------------------------------

def _single_one(tau):
    return SparseConfig(tau.source_group, tau.A, {tau.source_group.identity: tau.category.elements(tau.A)[1]},
                        tau.category.elements(tau.A)[0])


def demo_rule90(out: Path) -> list:
    Z = ZPower(1)
    tau = linear_ca(Z, 2, [(-1,), (1,)], [1, 1])   # x_{t+1}(i) = x_t(i-1) + x_t(i+1) over F_2
    rows = 64
    cells = render.window_cells(Z, rows - 1)
    frames = frames_on(iterate(tau, _single_one(tau), rows - 1), cells)
    return [_write(out, "rule90.pgm", render.pgm_frames(Z, tau.A, cells, frames)[0]),
            _write(out, "rule90.txt", render.text_frames(Z, tau.A, cells, frames))]


def demo_rule110(out: Path) -> list:
    Z = ZPower(1)
    tau = elementary_ca(110)
    steps = 16
    cells = render.window_cells(Z, steps)
    frames = frames_on(iterate(tau, _single_one(tau), steps), cells)
    return [_write(out, "rule110.pgm", render.pgm_frames(Z, tau.A, cells, frames)[0]),
            _write(out, "rule110.txt", render.text_frames(Z, tau.A, cells, frames))]


def demo_subsample(out: Path) -> list:
    """Rule 90 followed by keeping the even cells, as a single generalized CA over ``Z``."""
    Z = ZPower(1)
    rule90 = elementary_ca(90)
    double = MatrixHom(Z, Z, [[2]])
    tau = compose_gca(pullback_gca(double, rule90.B), as_gca(rule90))
    steps, radius = 8, 8
    cells = render.window_cells(Z, radius)
    c0 = random_sparse_config(Z, rule90.A, np.random.default_rng(7), 4 * radius)
    frames = frames_on(iterate(tau, c0, steps), cells)
    # the same thing done in two passes, for comparison
    direct, agree = c0, True
    for t in range(1, steps + 1):
        direct = FunctionConfig(Z, rule90.B, lambda x, c=apply(rule90, direct): c.at((2 * x[0],)))
        agree &= direct.window(cells) == frames[t]
    doc = {"automaton": ca_to_json(tau), "neighborhood": [elem_to_json(Z, s) for s in tau.S],
           "agrees_with_two_pass": agree}
    return [_write(out, "subsample.txt", render.text_frames(Z, rule90.B, cells, frames)),
            _write(out, "subsample.json", json.dumps(doc, sort_keys=True, indent=1) + "\n")]


def demo_weakprod(out: Path) -> list:
    """Trace of the mediator into ``(A x B)^{Z2 * Z3}`` for a fixed pair of automata over ``Z6``."""
    from .categories import FINSET
    G, H, K = cyclic(2), cyclic(3), cyclic(6)
    two = FINSET.obj(2)
    phi, psi = TableHom(G, K, [0, 3]), TableHom(H, K, [0, 2, 4])
    S = Subset(K, [5, 0, 1])
    PS = FINSET.power(two, S)
    windows = [dict(zip(S, FINSET.unpack(PS, code))) for code in range(FINSET.size(PS.carrier))]
    xor = FINSET.morphism(PS.carrier, two, [w[5] ^ w[1] for w in windows])
    majority = FINSET.morphism(PS.carrier, two, [int(sum(w.values()) >= 2) for w in windows])
    alpha = make_gca(K, G, phi, two, two, S, xor)
    beta = make_gca(K, H, psi, two, two, S, majority)
    m = weak_product_mediator(alpha, beta)
    iota_A, iota_B = weak_product(two, two, G, H)
    c = config_from_json({"kind": "dense", "values": [1, 0, 0, 1, 1, 0]}, K, two)
    mc, ac, bc = apply(m, c), apply(alpha, c), apply(beta, c)
    alpha_K, beta_K = factorize(alpha)[0], factorize(beta)[0]
    aK, bK = apply(alpha_K, c), apply(beta_K, c)
    _, pA, pB = FINSET.product(two, two)
    F = m.H
    cells = []
    for w in ball(F, 2):
        v = mc.at(w)
        k = m.phi(w)
        cells.append({"word": elem_to_json(F, w), "gamma": k, "value": [FINSET.apply(pA, v), FINSET.apply(pB, v)],
                      "alpha_K": aK.at(k), "beta_K": bK.at(k)})
    la, lb = apply(iota_A, mc), apply(iota_B, mc)
    doc = {"config": [c.at(k) for k in K.elements()],
           "ball": cells,
           "left": [{"g": g, "iota_A": la.at(g), "alpha": ac.at(g)} for g in G.elements()],
           "right": [{"h": h, "iota_B": lb.at(h), "beta": bc.at(h)} for h in H.elements()]}
    doc["equations_hold"] = (all(e["iota_A"] == e["alpha"] for e in doc["left"])
                             and all(e["iota_B"] == e["beta"] for e in doc["right"])
                             and all(e["value"] == [e["alpha_K"], e["beta_K"]] for e in cells))
    return [_write(out, "weakprod.json", json.dumps(doc, sort_keys=True, indent=1) + "\n")]


def cmd_demo(args) -> int:
    if args.name not in DEMOS:
        raise UsageError(f"unknown demo {args.name!r}; known: {', '.join(DEMOS)}")
    out = Path(args.out or f"demo-{args.name}")
    paths = globals()[f"demo_{args.name}"](out)
    for p in paths:
        print(p)
    return 0


# -- entry point -------------------------------------------------------------------

def _automaton_flags(p):
    p.add_argument("--ca", help="automaton JSON file")
    p.add_argument("--inline", help="automaton as inline JSON")
    p.add_argument("--rule", type=int, help="elementary rule number (0-255) over Z")
    p.add_argument("--group", help="group JSON (file or inline), overriding the automaton's")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radius", type=int, default=8)
    p.add_argument("--out", help="output directory")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="catca", description="Cellular automata over categories with products.")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="iterate an automaton and print frames")
    _automaton_flags(run)
    run.add_argument("--init", default="single", help="'single', 'random', or a configuration JSON")
    run.add_argument("--steps", type=int, default=8)
    run.add_argument("--window", help="explicit list of cells (JSON), instead of --radius")
    run.add_argument("--format", choices=["text", "pgm", "json"], default="text")
    run.add_argument("--save-state", help="write the final window as a configuration JSON")
    run.set_defaults(fn=cmd_run)

    chk = sub.add_parser("check", help="run verification suites and print JSON reports")
    chk.add_argument("suite", nargs="?", default="all")
    _automaton_flags(chk)
    chk.add_argument("--morphism", help="morphism JSON file to test with CHL extraction")
    chk.add_argument("--params", help="suite parameters as JSON")
    chk.add_argument("--groups", help="comma-separated group names, e.g. Z2,Z3,S3")
    chk.add_argument("--instances", help="comma-separated alphabet categories")
    chk.set_defaults(fn=cmd_check)

    demo = sub.add_parser("demo", help="write a curated example to a directory")
    demo.add_argument("name", help=", ".join(DEMOS))
    demo.add_argument("--out", help="output directory (default demo-NAME)")
    demo.set_defaults(fn=cmd_demo)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, FormatError, KeyError, json.JSONDecodeError) as exc:
        print(f"catca: {exc}", file=sys.stderr)
        return 2
    except (TypingError, MembershipError, CapabilityError, InfiniteUniverseError) as exc:
        print(f"catca: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"catca: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
