"""
Prioritize covariates for a planned replication study.

Usage: python prioritize_covariates.py rank --format md
       python prioritize_covariates.py sweep-n --criterion DE -o sweep.tsv
"""
import sys

from covprior.cli import main

if __name__ == "__main__":
    sys.exit(main())
