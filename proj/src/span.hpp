#pragma once

#include "ring.hpp"
#include "special_values.hpp"

#include <map>
#include <string>
#include <vector>

namespace qzk {

struct BasisElement {
	std::string label;
	int weight = 0;
	QSeries series{0};
};

/* All spanning elements of the family with weight <= max_weight, each
 * expanded to the given q-order; deterministic graded-lexicographic
 * order. For qMZV and QM the spanning set is the monomials in the
 * family's generators. */
std::vector<BasisElement> enumerate_basis(Family f, int max_weight, int order,
                                          long long element_budget = 200000);

std::vector<BasisElement> weight_slice(const std::vector<BasisElement> &basis, int w);

struct SpanCertificate {
	bool member = false;
	std::map<std::string, Rational> coords; // nonzero coordinates
	int order = 0;
	bool underdetermined = false;
	QSeries residual{0}; // zero series when member

	std::string to_json() const;
};

/* Exact coordinates of the target in the span, or a refutation at this
 * q-order. Deterministic: Gauss-Jordan with first-nonzero pivots in
 * basis order. Membership at a finite order is necessary-condition
 * evidence; the certificate records the order. */
SpanCertificate express(const QSeries &target,
                        const std::vector<BasisElement> &basis, int order);

/* Basis of the exact nullspace of the coefficient matrix up to the
 * given order; vectors are integer-normalized, primitive, with positive
 * leading coefficient. */
std::vector<std::map<std::string, Rational>>
find_relations(const std::vector<BasisElement> &basis, int order);

enum class WeightRule { exact, at_most };

struct MonomialCheck {
	std::string monomial;
	Exponents fexp;
	int weight = 0;
	int ab_degree = 0;
	bool ok = false;
	std::string note;
	SpanCertificate cert;
};

struct VerifyReport {
	std::string name;
	int order = 0;
	int degree = 0;
	bool passed = false;
	std::vector<MonomialCheck> items;

	std::string to_json() const;
	std::string to_text() const;
};

/* Runs express for every formal monomial of p (which must carry no
 * y-content) against the family basis of the monomial's weight (exact)
 * or up to it (at_most). Exponent-class degrees are excluded from the
 * weight. order <= 0 picks 2 * basis size + 10 per weight. */
VerifyReport verify_weighted_membership(const RingElement &p, Family f,
                                        WeightRule rule, int order);

/* Theorem drivers: "lemma31", "thm32:<r>", "thm45", "thm54:<N>". */
VerifyReport verify_theorem(const std::string &name, int order, int degree,
                            long long term_budget);

} // namespace qzk
