#pragma once

#include "poly.hpp"
#include "qseries.hpp"
#include "special_values.hpp"

#include <map>
#include <string>
#include <vector>

namespace qzk {

using NPoly = Poly;

/* S_t(n) = sum_{k=1}^n k^t; degree t+1, S_t(0) = 0. */
NPoly faulhaber(int t);

/* sum_{d_1..d_r >= 1, d_1+...+d_r <= n} prod d_i^{t_i}; all t_i >= 1.
 * Degree sum t_i + r, zero constant term. */
NPoly power_sum_le(const std::vector<int> &ts);

/* Same with d_1+...+d_r = n; degree sum t_i + r - 1. */
NPoly power_sum_eq(const std::vector<int> &ts);

/* The composition sum above for t_i >= 0; the polynomial agrees with
 * the sum for every n >= 1 (not necessarily at n = 0). */
NPoly composition_power_sum(const std::vector<int> &ts);

struct ChainVar {
	int u = 0; // exponent of the outer variable n
	int t = 0; // exponent of the inner variable d

	bool operator==(const ChainVar &) const = default;
};

/* One chain of (n, d) pairs: n-values descend strictly (or are free)
 * with the given lower bound, every d >= 1. The chain's d-variables
 * belong as a whole to one constraint group. */
struct Chain {
	int low = 1;      // 0 or 1
	bool strict = true;
	int group = -1;   // -1 none, 0 left-hand side, 1 right-hand side
	std::vector<ChainVar> vars; // outermost (largest n) first

	bool operator==(const Chain &) const = default;
};

/* Constrained lattice sum
 * sum prod n_i^{u_i} d_i^{t_i} q^{sum n_i d_i} with the optional
 * comparison between the two groups' d-sums. */
struct SumSpec {
	enum class Cmp { none, eq, lt, gt };

	std::vector<Chain> chains;
	Cmp cmp = Cmp::none;

	std::string to_json() const;
	static SumSpec from_json(const std::string &text);
	bool operator==(const SumSpec &) const = default;
};

/* Brute-force oracle: direct enumeration of all admissible tuples with
 * q-degree <= order. Rejects sums whose zero-bound variables cannot be
 * bounded through the constraint. */
QSeries sumspec_eval(const SumSpec &spec, int order,
                     long long tuple_budget = 200'000'000);

/* Decomposes free chains into strictly-ordered ones by merging blocks
 * of equal n-values; block d-compositions are replaced by their
 * power-sum polynomials. The sum of output values equals the input. */
std::vector<std::pair<Rational, SumSpec>> order_decompose(const SumSpec &spec);

/* Finite rational combination of bi-brackets and products of two
 * bi-brackets. */
class BiBracketCombination {
public:
	using Key = std::vector<BiBracketIndex>; // 0..2 factors, sorted

	void add(const Rational &c, Key key);
	void add_constant(const Rational &c) { add(c, {}); }
	void add_single(const Rational &c, BiBracketIndex idx);
	void add_product(const Rational &c, BiBracketIndex a, BiBracketIndex b);

	const std::map<Key, Rational> &terms() const { return terms_; }
	bool empty() const { return terms_.empty(); }
	size_t size() const { return terms_.size(); }

	BiBracketCombination &operator+=(const BiBracketCombination &o);
	BiBracketCombination &operator*=(const Rational &c);

	QSeries evaluate(int order) const;
	int max_weight() const;
	/* Every factor of every term lies in the qBD span (s_1 > 1). */
	bool all_qbd() const;

	std::string to_json() const;

private:
	std::map<Key, Rational> terms_;
};

struct ReduceOptions {
	/* > 0 turns on step-level certification: every rewrite node is
	 * re-evaluated by the brute-force oracle at this q-order. */
	int certify_order = 0;
	int max_depth = 64;
	long long tuple_budget = 200'000'000;
};

/* The elimination recursion for strict chains: one group-A chain
 * (lower bound 0) and one group-B chain (lower bound 1) tied by an
 * equality of d-sums. */
BiBracketCombination eliminate(const SumSpec &spec, const ReduceOptions &opts = {});

/* Full pipeline for the unordered sums: order_decompose followed by
 * eliminate on every strict piece. */
BiBracketCombination reduce_sum(const SumSpec &spec, const ReduceOptions &opts = {});

} // namespace qzk
