#pragma once

#include <string>
#include <vector>

namespace qzk {

struct SelftestResult {
	std::string name;
	bool ok = false;
	std::string detail;
};

/* The embedded property battery: ring axioms, exp/Bell agreement,
 * bracket formulas, dual-route bi-brackets, Faulhaber versus loops,
 * rewrite certification, truncation stability, solver determinism. */
std::vector<SelftestResult> run_selftest();

} // namespace qzk
