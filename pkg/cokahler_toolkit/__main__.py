"""CLI entry point for cokahler"""

import sys
import time
from pathlib import Path

from .algebra.errors import CokahlerError
from .commands import (Options, betti_relations, check_axioms, check_cokahler_lefschetz, check_kahler,
                       check_split, compare_presentations, compute_cohomology, compute_invariants,
                       mapping_torus, minimal_model, poincare_duality, property_b, toral_bound, trc,
                       trc_pipeline)
from .commands.utils import configure_logging, get_logger
from .document import dump
from .report import EXIT_STATUS, INPUT_ERROR, input_error_report, worst_verdict

LOG = get_logger(__name__)

# command -> (function of one document, whether --out receives an algebra document)
SINGLE_DOCUMENT_COMMANDS = {
    'check-axioms': (check_axioms, False),
    'cohomology': (compute_cohomology, True),
    'invariants': (compute_invariants, True),
    'poincare-duality': (poincare_duality, False),
    'check-kahler': (check_kahler, False),
    'mapping-torus': (mapping_torus, True),
    'check-cokahler-lefschetz': (check_cokahler_lefschetz, False),
    'betti-relations': (betti_relations, False),
    'property-b': (property_b, False),
    'trc': (trc, False),
    'toral-bound': (toral_bound, False),
    'trc-pipeline': (trc_pipeline, False),
    'minimal-model': (minimal_model, True),
    'check-split': (check_split, False),
}

VALUE_FLAGS = {'--out', '--format', '--max-degree', '--omega', '--eta', '--dim', '--batch'}
SWITCH_FLAGS = {'--debug', '--verbose', '--timing'}


def print_usage():
    """Print usage information"""
    print("Usage: cokahler <command> <document.alg> [options]")
    print()
    print("Commands:")
    print("  check-axioms FILE              Unit, graded commutativity, associativity, d^2 = 0, Leibniz")
    print("  cohomology FILE                Cohomology ring, emitted as a document")
    print("  invariants FILE                Subalgebra fixed by the document's action")
    print("  poincare-duality FILE          Perfectness of the pairings into the top degree")
    print("  check-kahler FILE              Hard Lefschetz on H_K and H_K^G for omega")
    print("  mapping-torus FILE             Co-Kahler model H_K^G (x) L(eta), emitted as a document")
    print("  check-cokahler-lefschetz FILE  Co-Kahler Lefschetz maps H^p -> H^(2n+1-p)")
    print("  betti-relations FILE           Betti-number relations of a co-Kahler model")
    print("  property-b FILE                Negative-degree derivations vanishing on H^1")
    print("  trc FILE                       Torus certificate for dim H >= 2^r")
    print("  toral-bound FILE               Toral rank bound for the mapping torus")
    print("  trc-pipeline FILE              Kahler, Property B and torus links for a mapping torus")
    print("  minimal-model FILE             Sullivan minimal model of a formal algebra")
    print("  check-split FILE               Model of the mapping torus against model(H_K^G) (x) L(eta)")
    print("  compare-presentations A B      Compare invariant algebras of two presentations")
    print("  help                           Show this message")
    print()
    print("Options:")
    print("  --out PATH               Write the emitted document (or the structured report) to PATH")
    print("  --format text|structured Report format on standard output (default: text)")
    print("  --max-degree N           Truncate at N; for model commands, the model degree")
    print("  --omega LABEL            Name of the Kahler class (default: omega)")
    print("  --eta LABEL              Name of the circle class (default: eta)")
    print("  --dim N                  Complex dimension n (default: from the top degree)")
    print("  --batch DIR              Run the command on every .alg file in DIR")
    print("  --debug                  Cross-check invariants against fixed subspaces")
    print("  --verbose                Debug logging to stderr")
    print("  --timing                 Include elapsed_seconds in structured reports")
    print()
    print("Exit status: 0 pass, 1 check failed, 2 invalid input, 3 inconclusive")
    print()
    print("Examples:")
    print("  cokahler mapping-torus example2.alg --out m.alg")
    print("  cokahler betti-relations m.alg")
    print("  cokahler property-b s3.alg --format structured")
    print("  cokahler minimal-model example1.alg --max-degree 4")
    print("  cokahler check-split example1.alg")


def _usage_error(message):
    print(f"Error: {message}")
    print()
    print_usage()
    sys.exit(EXIT_STATUS[INPUT_ERROR])


def _parse_int(flag, value):
    try:
        return int(value)
    except ValueError:
        _usage_error(f"{flag} expects an integer, got '{value}'")


def parse_arguments(args):
    """Split arguments into positional document paths and an Options instance"""
    options = Options()
    paths = []
    i = 0
    while i < len(args):
        arg = args[i]
        if arg.startswith('--'):
            flag, has_value, value = arg.partition('=')
            if flag in SWITCH_FLAGS:
                setattr(options, flag[2:], True)
            elif flag in VALUE_FLAGS:
                if not has_value:
                    i += 1
                    if i >= len(args):
                        _usage_error(f"{flag} requires a value")
                    value = args[i]
                if flag in ('--max-degree', '--dim'):
                    setattr(options, flag[2:].replace('-', '_'), _parse_int(flag, value))
                else:
                    setattr(options, flag[2:], value)
            else:
                _usage_error(f"Unknown option '{flag}'")
        else:
            paths.append(arg)
        i += 1
    if options.format == 'json':
        options.format = 'structured'
    if options.format not in ('text', 'structured'):
        _usage_error(f"--format must be 'text' or 'structured', got '{options.format}'")
    return paths, options


def run_command(command, paths, options):
    """Run one command; input errors become an input-error report"""
    start = time.perf_counter()
    try:
        if command == 'compare-presentations':
            report = compare_presentations(paths[0], paths[1], options)
        else:
            function, _ = SINGLE_DOCUMENT_COMMANDS[command]
            report = function(paths[0], options)
    except CokahlerError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        report = input_error_report(command, str(exc))
    report.elapsed = time.perf_counter() - start
    return report


def emit(report, command, options):
    """Print the report and write --out; returns the exit status"""
    produces_document = command in SINGLE_DOCUMENT_COMMANDS and SINGLE_DOCUMENT_COMMANDS[command][1]
    if options.out:
        if produces_document and report.model is not None:
            Path(options.out).write_text(dump(report.model))
            LOG.debug("wrote document to %s", options.out)
        elif not produces_document:
            Path(options.out).write_text(report.to_json(options.timing))
    if options.structured:
        sys.stdout.write(report.to_json(options.timing))
    else:
        sys.stdout.write(report.render_text())
    return report.exit_status


def run_batch(command, options):
    """Run a one-document command on every .alg file of --batch DIR, sequentially"""
    directory = Path(options.batch)
    if not directory.is_dir():
        _usage_error(f"Not a directory: {options.batch}")
    files = sorted(directory.glob('*.alg'))
    if not files:
        print(f"Warning: No .alg documents found in {directory}")
    out, options.out = options.out, None
    reports = {}
    for path in files:
        reports[path.name] = run_command(command, [str(path)], options)
    verdict = worst_verdict(report.verdict for report in reports.values())
    structured = {name: report.to_dict(options.timing) for name, report in reports.items()}
    if options.structured:
        sys.stdout.write(dump({"command": command, "batch": str(directory), "verdict": verdict,
                               "reports": structured}))
    else:
        for name, report in reports.items():
            print(f"== {name} ==")
            sys.stdout.write(report.render_text())
        print(f"batch: {verdict.upper()} ({len(reports)} documents)")
    if out:
        Path(out).write_text(dump(structured))
    return EXIT_STATUS[verdict]


def main():
    """Main entry point for the CLI"""
    if len(sys.argv) < 2:
        print_usage()
        sys.exit(EXIT_STATUS[INPUT_ERROR])

    command = sys.argv[1].lower()

    if command in ('help', '--help', '-h'):
        print_usage()
        sys.exit(0)

    paths, options = parse_arguments(sys.argv[2:])
    configure_logging(options.verbose)

    if command == 'compare-presentations':
        if len(paths) != 2:
            _usage_error("compare-presentations needs exactly two documents")
        if options.batch:
            _usage_error("--batch is not supported by compare-presentations")
        sys.exit(emit(run_command(command, paths, options), command, options))

    elif command in SINGLE_DOCUMENT_COMMANDS:
        if options.batch:
            if paths:
                _usage_error("--batch takes the documents from the directory; drop the file arguments")
            sys.exit(run_batch(command, options))
        if len(paths) != 1:
            _usage_error(f"{command} needs exactly one document")
        sys.exit(emit(run_command(command, paths, options), command, options))

    else:
        _usage_error(f"Unknown command '{command}'")


if __name__ == "__main__":
    main()
