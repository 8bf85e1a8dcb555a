"""``bdea`` command line interface."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from pathlib import Path

from . import kat
from .attack import MUTATION_KINDS, brute_force, corruption_probe, search_space
from .dna import pattern_from_string
from .errors import BdeaError
from .keyex import DEFAULT_G, DEFAULT_P, DhParams, KeyBundle, generate_keypair
from .netproto import BdeaServer, env_seed, send_file
from .pcr import PrimerPair, warn_if_degenerate
from .pipeline import CipherContainer, KeyMaterial, encrypt, encrypt_paper_mode, decrypt

log = logging.getLogger("bdea")


def _hostport(text: str) -> tuple[str, int]:
    host, _, port = text.rpartition(":")
    if not host or not port.isdigit():
        raise argparse.ArgumentTypeError(f"expected HOST:PORT, got {text!r}")
    return host, int(port)


def _key_material(args) -> KeyMaterial:
    pp = PrimerPair(args.primer1, args.primer2)
    warn_if_degenerate(pp)
    return KeyMaterial(pp, pattern_from_string(args.pattern))


def _add_key_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--primer1", required=True)
    p.add_argument("--primer2", required=True)
    p.add_argument("--pattern", default="ATGC", help="coding pattern for 00,01,10,11 (default ATGC)")


def cmd_kat(args) -> int:
    stages = None if args.stage == "all" else [args.stage]
    failed = 0
    for r in kat.run(stages):
        print(f"{'PASS' if r.ok else 'FAIL'}  {r.stage}" + ("" if r.ok else f"  ({r.detail})"))
        failed += not r.ok
    return 1 if failed else 0


def cmd_keygen(args) -> int:
    params = DhParams(args.p, args.g)
    pair = generate_keypair(params, args.seed)
    print(f"p={params.p}\ng={params.g}\nprivate={pair.private}\npublic={pair.public}")
    return 0


def cmd_encrypt(args) -> int:
    km = _key_material(args)
    plain = Path(args.infile).read_bytes()
    if args.paper_mode:
        container = encrypt_paper_mode(plain, km)
        bundle = KeyBundle(km.primers, km.pattern, b"")
    else:
        container, bundle = encrypt(plain, km)
    Path(args.out).write_bytes(container.to_bytes())
    Path(args.bundle_out).write_bytes(bundle.to_bytes())
    log.info("wrote %s and %s", args.out, args.bundle_out)
    return 0


def _load(container_path, bundle_path) -> tuple[CipherContainer, KeyBundle]:
    container = CipherContainer.from_bytes(Path(container_path).read_bytes())
    bundle = KeyBundle.from_bytes(Path(bundle_path).read_bytes())
    return container, bundle


def cmd_decrypt(args) -> int:
    container, bundle = _load(args.infile, args.bundle)
    Path(args.out).write_bytes(decrypt(container, bundle))
    return 0


def cmd_send(args) -> int:
    km = _key_material(args)
    dh = DhParams(args.p, args.g)
    seed = args.seed if args.seed is not None else env_seed()
    crc = send_file(args.to, Path(args.infile).read_bytes(), km, dh, seed)
    print(f"ack crc32={crc:08x}")
    return 0


def cmd_recv(args) -> int:
    seed = args.seed if args.seed is not None else env_seed()
    with BdeaServer(args.listen, out_dir=args.out, dh_seed=seed) as server:
        host, port = server.server_address[:2]
        print(f"listening on {host}:{port}", flush=True)
        if args.once:
            server.handle_request()
            server.session_done.wait(server.timeout_s)
            _, plaintext, error = server.results[-1] if server.results else (None, None, None)
            return 0 if plaintext is not None and error is None else 1
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            pass
    return 0


def cmd_attack(args) -> int:
    container, bundle = _load(args.infile, args.bundle)
    report = brute_force(container, bundle.k_b, bundle.pattern, args.max_len)
    l1, l2 = len(bundle.primers.p1), len(bundle.primers.p2)
    fraction = None
    if args.seed is not None:
        kinds = MUTATION_KINDS if bundle.k_b else ("primer", "pattern")
        fraction = corruption_probe(container, bundle, args.mutations, args.seed, kinds)
    print(f"trials {report.trials}")
    print(f"matches {len(report.matches)}")
    for p1, p2 in report.matches:
        print(f"match {p1} {p2}")
    print(f"elapsed {report.elapsed:.3f}s")
    print(f"primer-space {search_space(l1, l2)}")
    print("patterns 24")
    if fraction is not None:
        print(f"corruption-fraction {fraction:.4f}")
    if args.json:
        data = report.to_dict()
        data.update({"primer_space": search_space(l1, l2), "patterns": 24,
                     "corruption_fraction": fraction})
        Path(args.json).write_text(json.dumps(data, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bdea", description="Bi-serial DNA encryption toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kat", help="run known-answer tests from the worked example")
    p.add_argument("--stage", default="all", choices=["all", *kat.STAGES])
    p.set_defaults(func=cmd_kat)

    p = sub.add_parser("keygen", help="generate a Diffie-Hellman key pair")
    p.add_argument("--p", type=int, default=DEFAULT_P)
    p.add_argument("--g", type=int, default=DEFAULT_G)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--bundle-out", required=True)
    p.add_argument("--paper-mode", action="store_true", help="skip envelope and XOR")
    _add_key_args(p)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--bundle", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("send", help="send a file to a bdea receiver")
    p.add_argument("--to", type=_hostport, required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--p", type=int, default=DEFAULT_P)
    p.add_argument("--g", type=int, default=DEFAULT_G)
    p.add_argument("--seed", type=int, help="DH seed (else $BDEA_DH_SEED, else OS randomness)")
    _add_key_args(p)
    p.set_defaults(func=cmd_send)

    p = sub.add_parser("recv", help="receive files")
    p.add_argument("--listen", type=_hostport, required=True)
    p.add_argument("--out", required=True, help="directory for received plaintexts")
    p.add_argument("--seed", type=int)
    p.add_argument("--once", action="store_true", help="handle one session then exit")
    p.set_defaults(func=cmd_recv)

    p = sub.add_parser("attack", help="exhaustive primer search and corruption probe")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--bundle", required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--seed", type=int, help="also run a seeded corruption probe")
    p.add_argument("--mutations", type=int, default=1000)
    p.add_argument("--json", metavar="FILE", help="write the report as JSON")
    p.set_defaults(func=cmd_attack)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    warnings.simplefilter("default")
    try:
        return args.func(args)
    except (BdeaError, OSError) as exc:
        print(f"bdea: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
