"""Turing machines, their compiled rewrite systems, and diamond-like shape checks.

Machines, rewrite systems, terms, and configurations all travel as text in
the formats the ``trsdiamond`` CLI reads and writes; structured results come
back as plain dicts mirroring the CLI's ``--json`` reports.
"""

import json as _json
import sys as _sys

from ._core import (
    compile_machine,
    decode_term,
    encode_config,
    export_graph,
    machine_to_text,
    named_shapes,
    successors,
    validate_machine,
)
from . import _core as _core

__version__ = "0.1.0"

__all__ = [
    "compile_machine",
    "machine_to_text",
    "validate_machine",
    "simulate",
    "encode_config",
    "decode_term",
    "successors",
    "reachable",
    "terminates",
    "joinable",
    "check_trs",
    "check_machine",
    "export_graph",
    "named_shapes",
    "run_command",
    "main",
]


def simulate(machine_text, steps=100):
    """Run a machine from the empty tape; dict with status/steps/cycle."""
    return _json.loads(_core.simulate_json(machine_text, steps))


def reachable(trs_text, seed, steps=1000, terms=5000, size=10000):
    """Breadth-first closure of a ground seed term under the system."""
    return _json.loads(_core.reachable_json(trs_text, seed, steps, terms, size))


def terminates(machine_text, steps=1000, terms=5000, size=10000):
    """Three-valued termination verdict with witness or certificate."""
    return _json.loads(_core.terminates_json(machine_text, steps, terms, size))


def joinable(trs_text, branches, labels, steps=1000, terms=5000, size=10000):
    """Can the branch terms meet, each within its label from {*,+,=,1}?"""
    return _json.loads(
        _core.joinable_json(trs_text, list(branches), labels, steps, terms, size)
    )


def check_trs(trs_text, shape, peaks, steps=1000, terms=5000, size=10000):
    """Check a shape over explicit ground peaks of a rewrite system."""
    return _json.loads(
        _core.check_trs_json(trs_text, shape, list(peaks), steps, terms, size)
    )


def check_machine(machine_text, shape, steps=1000, terms=5000, size=10000, cross_check=False):
    """Check a shape on the relation derived from a machine."""
    return _json.loads(
        _core.check_machine_json(machine_text, shape, steps, terms, size, cross_check)
    )


def run_command(args):
    """Run one CLI invocation in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_command([str(a) for a in args])


def main(argv=None):
    if argv is None:
        argv = _sys.argv[1:]
    code, out, err = run_command(argv)
    _sys.stdout.write(out)
    _sys.stderr.write(err)
    return code
