#pragma once

#include "poly.hpp"
#include "qseries.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qzk {

struct BracketIndex {
	std::vector<int> s;

	int weight() const;
	int depth() const { return static_cast<int>(s.size()); }
	std::string label() const; // "[2,1]", "1" for the empty index
	auto operator<=>(const BracketIndex &) const = default;
};

struct BiBracketIndex {
	std::vector<int> s; // lower-row exponents, s_i >= 1
	std::vector<int> r; // upper-row exponents, r_i >= 0

	int weight() const;
	int depth() const { return static_cast<int>(s.size()); }
	/* Empty index or s_1 > 1; membership in the qBD span. */
	bool in_qbd() const;
	std::string label() const; // "[2,1|0,1]", "1" for the empty index
	auto operator<=>(const BiBracketIndex &) const = default;
};

/* Numerator polynomial t P_{s-1}(t) of the identity
 * t P_{s-1}(t) / (1-t)^s = sum_{d>=1} d^{s-1} t^d, certified internally
 * to t-order 2s+4. */
Poly eulerian_numerator(int s);

/* B_i from t/(e^t - 1) = 1 - t/2 + sum_{i>=2} B_i t^i / i!. */
Rational bernoulli(int i);

/* Bracket [s_1,...,s_l]: enumeration of n_1 > ... > n_l >= 1, d_i >= 1
 * with sum n_i d_i <= order, divided by prod (s_i - 1)!. */
QSeries bracket(const BracketIndex &idx, int order);

/* Bi-bracket by its defining double enumeration over u_1 > ... > u_l > 0
 * and v_i > 0. The cached value is cross-checked against the
 * Eulerian-kernel form on first computation. */
QSeries bibracket(const BiBracketIndex &idx, int order);

/* The same series through the kernel form
 * sum_{n_1 > ... > n_l > 0} prod n_i^{r_i}/r_i! *
 * q^{n_i} P_{s_i-1}(q^{n_i}) / ((s_i-1)! (1-q^{n_i})^{s_i}). */
QSeries bibracket_kernel_form(const BiBracketIndex &idx, int order);

/* Okounkov Z-value Z(s_1,...,s_l), all s_i >= 2. */
QSeries zvalue(const std::vector<int> &s, int order);

/* Eisenstein series G_k for even k >= 2, weight-k normalization
 * G_k = (1/(k-1)!) (-B_k/(2k) + sum_n sigma_{k-1}(n) q^n). */
QSeries eisenstein(int k, int order);

enum class Family { MD, qMD, BD, qBD, qMZV, QM };

std::optional<Family> family_from_string(const std::string &name);
std::string family_name(Family f);

} // namespace qzk
