"""Command-line interface.

Exit codes: 0 all checks pass, 1 a mathematical expectation failed (the
alarming case: the encoded theory disagrees with the computation), 2 a
usage or size error.  All randomized subcommands take --rng-seed (falling
back to the RNG_SEED environment variable) and print byte-stable JSON for
identical configurations.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from math import comb

from symcover.classify import (
    classify_report,
    find_ell,
    kernel_check,
    split_check,
)
from symcover.cohom import GModule, full_subgroup_exists, h1_dim
from symcover.errors import MathExpectationError, OddCocycleValue, SizeBoundExceeded
from symcover.gamma import Gamma
from symcover.kcomb import Perm
from symcover.specht import lattice_report, standard_submodule

DEFAULT_SIZE_BOUND = 512
DEFAULT_SEED = 20020
DEFAULT_TRIALS = 200

EXIT_OK = 0
EXIT_MATH_FAIL = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    n: int
    k: int
    ell: int | None = None
    rng_seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    size_bound: int = DEFAULT_SIZE_BOUND
    json: bool = False

    def validate(self):
        if not 2 <= self.k <= self.n:
            raise SizeBoundExceeded(f"need 2 <= k <= n, got k={self.k}, n={self.n}")
        if self.trials < 1:
            raise SizeBoundExceeded(f"trials must be >= 1, got {self.trials}")
        if comb(self.n, self.k) > self.size_bound:
            raise SizeBoundExceeded(
                f"C({self.n},{self.k}) = {comb(self.n, self.k)} exceeds the size "
                f"bound {self.size_bound}; raise --size-bound to proceed"
            )


def _emit(obj) -> None:
    print(json.dumps(obj))


def _seed(args) -> int:
    given = getattr(args, "rng_seed", None)
    if given is not None:
        return given
    env = os.environ.get("RNG_SEED")
    return int(env) if env else DEFAULT_SEED


def _parse_kernel(text: str, k: int) -> tuple[int, ...]:
    text = text.strip().strip("{}")
    if text in ("", "none"):
        return ()
    try:
        J = tuple(sorted({int(tok) for tok in text.split(",")}))
    except ValueError:
        raise SizeBoundExceeded(f"cannot parse kernel index set {text!r}") from None
    if any(not 0 <= j <= k for j in J):
        raise SizeBoundExceeded(f"kernel indices must lie in 0..{k}, got {J}")
    return J


def _config(args, need_n=True) -> RunConfig:
    cfg = RunConfig(
        n=getattr(args, "n", 0) if need_n else 0,
        k=args.k,
        ell=getattr(args, "ell", None),
        rng_seed=_seed(args),
        trials=getattr(args, "trials", DEFAULT_TRIALS),
        size_bound=getattr(args, "size_bound", DEFAULT_SIZE_BOUND),
        json=getattr(args, "json", False),
    )
    if need_n:
        cfg.validate()
    return cfg


# -- subcommands ---------------------------------------------------------------


def cmd_lattice(args) -> int:
    cfg = _config(args)
    rep = lattice_report(cfg.k, cfg.n, size_bound=cfg.size_bound)
    payload = {
        "k": rep.k,
        "n": rep.n,
        "nodes": [
            {"J": list(nd.J), "dim": nd.dim, "s2Factor": nd.s2_factor} for nd in rep.nodes
        ],
        "hasse": [list(e) for e in rep.hasse],
    }
    if args.outdir:
        from symcover.report import write_lattice_outputs

        paths = write_lattice_outputs(rep, args.outdir)
        payload["files"] = {k: str(v) for k, v in paths.items()}
    if cfg.json:
        _emit(payload)
    else:
        print(f"standard submodule lattice at k={rep.k}, n={rep.n}")
        for i, nd in enumerate(rep.nodes):
            mark = "degree-2 factor" if nd.s2_factor else ""
            print(f"  [{i}] J={{{','.join(map(str, nd.J))}}} dim={nd.dim} {mark}".rstrip())
        print("  cover relations:", " ".join(f"{i}<{j}" for i, j in rep.hasse))
        if args.outdir:
            print("  wrote:", ", ".join(str(p) for p in payload["files"].values()))
    return EXIT_OK


def cmd_cocycle_check(args) -> int:
    cfg = _config(args)
    gam = Gamma(cfg.k, cfg.n)
    rng = random.Random(cfg.rng_seed)
    identity_failures = 0
    normalization_failures = 0
    odd_failures = 0
    ident = Perm.identity(cfg.n)

    def rand_perm():
        imgs = list(range(1, cfg.n + 1))
        rng.shuffle(imgs)
        return Perm(tuple(imgs))

    for _ in range(cfg.trials):
        h, g, f = rand_perm(), rand_perm(), rand_perm()
        try:
            lhs = gam.twist_bits(h, gam.cocycle_bits(g, f)) ^ gam.cocycle_bits(h, g * f)
            rhs = gam.cocycle_bits(h, g) ^ gam.cocycle_bits(h * g, f)
            if lhs != rhs:
                identity_failures += 1
            if gam.cocycle_bits(ident, g) or gam.cocycle_bits(g, ident):
                normalization_failures += 1
        except OddCocycleValue:
            odd_failures += 1
    passed = identity_failures == normalization_failures == odd_failures == 0
    _emit(
        {
            "n": cfg.n,
            "k": cfg.k,
            "trials": cfg.trials,
            "rngSeed": cfg.rng_seed,
            "identityFailures": identity_failures,
            "normalizationFailures": normalization_failures,
            "oddValueFailures": odd_failures,
            "allPassed": passed,
        }
    )
    return EXIT_OK if passed else EXIT_MATH_FAIL


def cmd_full_subgroup(args) -> int:
    cfg = _config(args)
    J = _parse_kernel(args.kernel, cfg.k)
    kernel = standard_submodule(J, cfg.k, cfg.n)
    sat, cert = full_subgroup_exists(kernel, cfg.k, cfg.n, method="both")
    payload = {
        "sat": sat,
        "witnessOnGenerators": [
            [u[i] for i in range(u.length)] for u in (cert.u_on_generators or ())
        ]
        if sat
        else None,
        "rankGap": cert.rank_gap,
    }
    _emit(payload)
    return EXIT_OK


def cmd_classify(args) -> int:
    cfg = _config(args)
    rep = classify_report(cfg.k, cfg.n, size_bound=cfg.size_bound)
    payload = {
        "k": rep.k,
        "n": rep.n,
        "rows": [
            {
                "J": list(r.J),
                "dim": r.dim,
                "s2Factor": r.s2_factor,
                "exists": r.exists,
                "rankGap": r.rank_gap,
            }
            for r in rep.rows
        ],
        "verdicts": [
            {"name": v.name, "passed": v.passed, "detail": v.detail} for v in rep.verdicts
        ],
        "regimeWarning": rep.regime_warning,
        "allPass": rep.all_pass,
    }
    if args.outdir:
        from symcover.report import write_classify_outputs

        paths = write_classify_outputs(rep, args.outdir)
        payload["files"] = {k: str(v) for k, v in paths.items()}
    if cfg.json:
        _emit(payload)
    else:
        print(f"full-subgroup kernels at k={rep.k}, n={rep.n}")
        if rep.regime_warning:
            print(f"  ! {rep.regime_warning}")
        for r in rep.rows:
            status = "SAT  " if r.exists else "UNSAT"
            print(
                f"  J={{{','.join(map(str, r.J))}}} dim={r.dim} "
                f"s2={'y' if r.s2_factor else 'n'} -> {status}"
            )
        for v in rep.verdicts:
            print(f"  verdict {v.name}: {'PASS' if v.passed else 'FAIL'}")
        if args.outdir:
            print("  wrote:", ", ".join(str(p) for p in payload["files"].values()))
    return EXIT_OK if rep.all_pass else EXIT_MATH_FAIL


def cmd_ell(args) -> int:
    cert = find_ell(args.k)
    _emit({"k": cert.k, "ell": cert.ell, "certified": cert.verify()})
    return EXIT_OK if cert.verify() else EXIT_MATH_FAIL


def cmd_split_check(args) -> int:
    cfg = _config(args)
    split = split_check(cfg.k, cfg.n)
    _emit({"split": split})
    return EXIT_OK if not split else EXIT_MATH_FAIL


def cmd_kernel_check(args) -> int:
    cfg = _config(args)
    if cfg.ell is None or not cfg.k <= cfg.ell <= cfg.n:
        raise SizeBoundExceeded(f"need k <= ell <= n, got ell={cfg.ell}")
    res = kernel_check(cfg.k, cfg.ell, cfg.n)
    _emit(
        {
            "k": res.k,
            "ell": res.ell,
            "n": res.n,
            "equal": res.equal,
            "kernelDim": res.kernel_dim,
            "mDim": res.m_dim,
            "conditionsHold": res.conditions_hold,
            "inRegime": res.in_regime,
        }
    )
    # equality is only promised when ell is certified and n is large enough
    if res.conditions_hold and res.in_regime and not res.equal:
        return EXIT_MATH_FAIL
    return EXIT_OK


def cmd_h1(args) -> int:
    cfg = _config(args)
    J = _parse_kernel(args.kernel, cfg.k)
    kernel = standard_submodule(J, cfg.k, cfg.n)
    module = GModule.quotient(kernel, cfg.k, cfg.n)
    dim = h1_dim(module, method="both" if module.n <= 5 else "propagation")
    _emit(
        {
            "n": cfg.n,
            "k": cfg.k,
            "kernelJ": list(J),
            "quotientDim": module.dim,
            "h1Dim": dim,
            "note": (
                "finite analogue: computed for Sym(n) at this n; the value may "
                "differ from the infinite-degree continuous theory"
            ),
        }
    )
    return EXIT_OK


def cmd_selftest(args) -> int:
    rng = random.Random(_seed(args))
    failures = 0

    def check(name: str, ok: bool):
        nonlocal failures
        print(f"selftest {name}: {'PASS' if ok else 'FAIL'}")
        if not ok:
            failures += 1

    from math import comb as _comb

    from symcover.kcomb import KSubsetIndexer, binom_parity
    from symcover.specht import alpha_matrix, beta_matrix, composition_identity_check

    check(
        "binomial-parity",
        all(
            binom_parity(a, b) == _comb(a, b) % 2
            for a in range(33)
            for b in range(a + 1)
        ),
    )
    idx = KSubsetIndexer(6, 3)
    check("colex-roundtrip", all(idx.unrank(idx.rank(w)) == w for w in idx.subsets))
    check(
        "duality",
        all(
            beta_matrix(k, j, n) == alpha_matrix(j, k, n).mat.transpose()
            for n in range(6)
            for k in range(n + 1)
            for j in range(k + 1)
        ),
    )
    check(
        "composition-identity",
        all(
            composition_identity_check(j, k, l, n)
            for n in range(6)
            for l in range(n + 1)
            for k in range(l + 1)
            for j in range(k + 1)
        ),
    )

    gam = Gamma(2, 5)
    ok = True
    for _ in range(60):
        imgs = list(range(1, 6))
        rng.shuffle(imgs)
        h = Perm(tuple(imgs))
        rng.shuffle(imgs)
        g = Perm(tuple(imgs))
        rng.shuffle(imgs)
        f = Perm(tuple(imgs))
        lhs = gam.twist_bits(h, gam.cocycle_bits(g, f)) ^ gam.cocycle_bits(h, g * f)
        rhs = gam.cocycle_bits(h, g) ^ gam.cocycle_bits(h * g, f)
        ok = ok and lhs == rhs
    check("cocycle-identity", ok)

    gam32 = Gamma(2, 3)
    ident = gam32.identity()
    ok = True
    for _ in range(200):
        x, y, z = (gam32.random_element(rng) for _ in range(3))
        ok = ok and gam32.mult(gam32.mult(x, y), z) == gam32.mult(x, gam32.mult(y, z))
        ok = ok and gam32.mult(x, gam32.inv(x)) == ident
    check("group-axioms", ok)

    check("split-check", not split_check(2, 3) and not split_check(2, 4))
    check("ell-finder", all(find_ell(k).verify() for k in (3, 4, 5)))
    check("lattice", len(lattice_report(2, 5).nodes) == 5)
    check("h1-trivial", h1_dim(GModule.trivial(4), method="both") == 1)

    print(f"selftest: {'all PASS' if failures == 0 else f'{failures} FAILURES'}")
    return EXIT_OK if failures == 0 else EXIT_MATH_FAIL


# -- parser ---------------------------------------------------------------------


def _add_common(p, n=True, seed=True, bound=True):
    if n:
        p.add_argument("--n", type=int, required=True, help="ground-set size")
    p.add_argument("--k", type=int, required=True, help="subset size")
    if seed:
        p.add_argument("--rng-seed", type=int, default=None, help="seed (env RNG_SEED as fallback)")
    if bound:
        p.add_argument(
            "--size-bound",
            type=int,
            default=DEFAULT_SIZE_BOUND,
            help=f"max allowed C(n,k) (default {DEFAULT_SIZE_BOUND})",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symcover",
        description="finite covers of k-subset actions: lattices, cocycles, full subgroups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", help="standard submodule lattice as JSON/TSV/figure")
    _add_common(p, seed=False)
    p.add_argument("--json", action="store_true")
    p.add_argument("--outdir", default=None, help="write TSV tables and a PNG figure here")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("cocycle-check", help="verify the 2-cocycle identities on random triples")
    _add_common(p)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.set_defaults(func=cmd_cocycle_check)

    p = sub.add_parser("full-subgroup", help="decide existence for one kernel")
    _add_common(p)
    p.add_argument("--kernel", required=True, help="comma-separated level indices, e.g. 0,1")
    p.set_defaults(func=cmd_full_subgroup)

    p = sub.add_parser("classify", help="solve every standard kernel and grade the verdicts")
    _add_common(p, seed=False)
    p.add_argument("--json", action="store_true")
    p.add_argument("--outdir", default=None, help="write TSV table and a PNG figure here")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("ell", help="binary-complement level for the pushforward argument")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_ell)

    p = sub.add_parser("split-check", help="does the zero kernel admit a full subgroup?")
    _add_common(p, seed=False)
    p.set_defaults(func=cmd_split_check)

    p = sub.add_parser("kernel-check", help="compare ker(alpha(k,ell)) with the module M")
    _add_common(p, seed=False)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_kernel_check)

    p = sub.add_parser("h1", help="degree-1 cohomology dimension of a quotient module")
    _add_common(p, seed=False)
    p.add_argument("--kernel", required=True, help="comma-separated level indices, e.g. 0,1")
    p.set_defaults(func=cmd_h1)

    p = sub.add_parser("selftest", help="run a quick battery of identity checks")
    p.add_argument("--rng-seed", type=int, default=None)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SizeBoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MathExpectationError, OddCocycleValue) as exc:
        print(f"MATH EXPECTATION FAILED: {exc}", file=sys.stderr)
        return EXIT_MATH_FAIL


if __name__ == "__main__":
    sys.exit(main())
