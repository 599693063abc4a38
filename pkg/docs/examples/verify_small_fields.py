"""
Example: Verifying Small Fields

Runs every check for a few parameter sets and prints one line per check.
Rejected pairs and size-guard refusals are reported instead of raised.

Expected output (abridged):
    ===== (n, k) = (5, 1) =====
    T distribution        PASS
    ...
    correlations          ERRATA      cmax 17, ... errata
    exit code: 0

    ===== (n, k) = (8, 2) =====
    rejected: k = n/4 is excluded [n=8, k=2]
"""

from kasami_welch import Toolkit
from kasami_welch.errors import ParameterError, SizeGuardError


def verify(spec: str) -> None:
    print(f"===== (n, k) = ({spec.replace('/', ', ')}) =====")
    try:
        summary = Toolkit(spec).verify()
    except ParameterError as e:
        print(f"rejected: {e}\n")
        return
    except SizeGuardError as e:
        print(f"too large: {e}\n")
        return

    for check in summary.checks:
        print(f"{check.name:20}  {check.status:11} {check.detail}")
    print(f"exit code: {summary.exit_code}\n")


def main() -> None:
    for spec in ("5/1", "7/1", "6/1", "8/2"):
        verify(spec)


if __name__ == "__main__":
    main()
