"""
Running the acceptance criteria
===============================

Each criterion is a function returning a result with a pass flag, a detail
record and its running time against a budget.
"""

import sys

from stabaut.acceptance import CRITERIA, run_all

numbers = [int(a) for a in sys.argv[1:]] or sorted(CRITERIA)
results = run_all(numbers)
print(sum(r.passed and r.within_budget for r in results), "of", len(results), "passed within budget")
