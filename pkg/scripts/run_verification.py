"""Run the full verification suite and write the JSON report.

    python scripts/run_verification.py --seed 7 --out report.json
"""
import argparse
import sys

from ghdist.verify import VerifyConfig, run_suite


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default="verification_report.json")
    args = p.parse_args()

    cfg = VerifyConfig(seed=args.seed, sandwich_trials=args.trials, threads=args.threads)
    report = run_suite(cfg)
    with open(args.out, "w") as fh:
        fh.write(report.to_json() + "\n")
    print(report.table())
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
