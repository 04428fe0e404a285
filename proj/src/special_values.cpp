#include "special_values.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace qzk {

int BracketIndex::weight() const
{
	int w = 0;
	for (int x : s)
		w += x;
	return w;
}

static std::string join(const std::vector<int> &v)
{
	std::ostringstream os;
	for (size_t i = 0; i < v.size(); ++i) {
		if (i)
			os << ",";
		os << v[i];
	}
	return os.str();
}

std::string BracketIndex::label() const
{
	if (s.empty())
		return "1";
	return "[" + join(s) + "]";
}

int BiBracketIndex::weight() const
{
	int w = 0;
	for (int x : s)
		w += x;
	for (int x : r)
		w += x;
	return w;
}

bool BiBracketIndex::in_qbd() const { return s.empty() || s.front() > 1; }

std::string BiBracketIndex::label() const
{
	if (s.empty())
		return "1";
	return "[" + join(s) + "|" + join(r) + "]";
}

Poly eulerian_numerator(int s)
{
	if (s < 1)
		throw Error(errc::invalid_argument, "eulerian numerator needs s >= 1");
	/* (1-t)^s * sum_{d>=1} d^{s-1} t^d collapses to the numerator
	 * polynomial; multiply out to order 2s+4 and require everything
	 * above degree s to cancel. */
	int order = 2 * s + 4;
	std::vector<Rational> sum(order + 1, Rational(0));
	for (int d = 1; d <= order; ++d) {
		Rational p(1);
		for (int k = 0; k < s - 1; ++k)
			p *= d;
		sum[d] = p;
	}
	std::vector<Rational> prod(order + 1, Rational(0));
	/* (1-t)^s = sum_j C(s,j) (-1)^j t^j. */
	for (int j = 0; j <= s && j <= order; ++j) {
		Rational c = binomial(s, j);
		if (j % 2)
			c = -c;
		for (int d = 0; d + j <= order; ++d)
			if (sum[d] != 0)
				prod[d + j] += c * sum[d];
	}
	for (int k = s + 1; k <= order; ++k)
		if (prod[k] != 0)
			throw Error(errc::internal,
			            "eulerian numerator failed its defining identity");
	Poly out;
	for (int k = s; k >= 0; --k)
		if (prod[k] != 0)
			out += Poly::monomial(k, prod[k]);
	return out;
}

Rational bernoulli(int i)
{
	if (i < 0)
		throw Error(errc::invalid_argument, "bernoulli index must be >= 0");
	static std::mutex mtx;
	static std::vector<Rational> cache; // coefficients of t/(e^t - 1)
	std::lock_guard lock(mtx);
	if (static_cast<int>(cache.size()) <= i) {
		int order = i + 8;
		/* Invert (e^t - 1)/t = sum_k t^k/(k+1)!. */
		std::vector<Rational> a(order + 1);
		for (int k = 0; k <= order; ++k)
			a[k] = 1 / factorial(k + 1);
		std::vector<Rational> b(order + 1, Rational(0));
		b[0] = 1;
		for (int n = 1; n <= order; ++n) {
			Rational acc(0);
			for (int k = 1; k <= n; ++k)
				acc += a[k] * b[n - k];
			b[n] = -acc;
		}
		cache = std::move(b);
	}
	return cache[i] * factorial(i);
}

namespace {

struct ChainEnumerator {
	/* Accumulates prod d_i^{p_i} * n_i^{e_i} over strict descending
	 * chains n_1 > ... > n_l >= 1 with d_i >= 1 and sum n_i d_i within
	 * the order. */
	QSeries out;
	const std::vector<int> &d_pow;
	const std::vector<int> &n_pow;

	ChainEnumerator(int order, const std::vector<int> &dp, const std::vector<int> &np)
	    : out(order), d_pow(dp), n_pow(np)
	{}

	static Rational ipow(long base, int e)
	{
		Rational p(1);
		for (int k = 0; k < e; ++k)
			p *= base;
		return p;
	}

	void run(size_t level, int n_upper, int used, const Rational &coeff)
	{
		if (level == d_pow.size()) {
			out.add_to(used, coeff);
			return;
		}
		int budget = out.order() - used;
		int depth_left = static_cast<int>(d_pow.size() - level);
		for (int n = depth_left; n < n_upper && n <= budget; ++n) {
			/* n >= depth_left leaves room for the strictly smaller
			 * chain values below. */
			Rational ncoeff = coeff * ipow(n, n_pow[level]);
			for (int d = 1; n * d <= budget; ++d) {
				Rational c = ncoeff * ipow(d, d_pow[level]);
				run(level + 1, n, used + n * d, c);
			}
		}
	}
};

using CacheKey = std::tuple<char, std::vector<int>, std::vector<int>, int>;

QSeries &cache_slot(const CacheKey &key, bool &fresh)
{
	static std::mutex mtx;
	static std::map<CacheKey, QSeries> cache;
	std::lock_guard lock(mtx);
	auto it = cache.find(key);
	fresh = it == cache.end();
	if (fresh)
		it = cache.emplace(key, QSeries(0)).first;
	return it->second;
}

} // namespace

QSeries bracket(const BracketIndex &idx, int order)
{
	for (int si : idx.s)
		if (si < 1)
			throw Error(errc::invalid_argument,
			            "bracket entries must be >= 1");
	bool fresh = false;
	QSeries &slot = cache_slot({'B', idx.s, {}, order}, fresh);
	if (!fresh)
		return slot;
	std::vector<int> d_pow(idx.s.size()), n_pow(idx.s.size(), 0);
	for (size_t i = 0; i < idx.s.size(); ++i)
		d_pow[i] = idx.s[i] - 1;
	ChainEnumerator en(order, d_pow, n_pow);
	en.run(0, order + 1, 0, Rational(1));
	Rational norm(1);
	for (int si : idx.s)
		norm *= factorial(si - 1);
	en.out *= 1 / norm;
	slot = en.out;
	return slot;
}

QSeries bibracket_kernel_form(const BiBracketIndex &idx, int order)
{
	size_t l = idx.s.size();
	if (l == 0)
		return QSeries::one(order);
	/* Per-level kernels K_i(n) have q-valuation n, so the descending
	 * chain sum is a prefix-sum dynamic program over n = 1..order. */
	std::vector<QSeries> running(order + 2, QSeries(order));
	for (int n = 1; n <= order + 1; ++n)
		running[n] = QSeries::one(order); // sum over empty tail
	for (size_t level = l; level-- > 0;) {
		int s = idx.s[level];
		int r = idx.r[level];
		Poly num = eulerian_numerator(s);
		std::vector<QSeries> next(order + 2, QSeries(order));
		QSeries prefix(order); // sum_{n' <= n} K(n') * running(n')
		for (int n = 1; n <= order; ++n) {
			next[n] = prefix; // strict: tails use n' < n
			QSeries kernel(order);
			for (int j = 1; j <= num.degree(); ++j) {
				if (num.coeff(j) == 0 || n * j > order)
					continue;
				kernel.add_to(n * j, num.coeff(j));
			}
			QSeries one_minus = QSeries::one(order);
			one_minus.add_to(n, Rational(-1));
			kernel = kernel * one_minus.pow(-s);
			Rational c = ChainEnumerator::ipow(n, r) /
			             (factorial(r) * factorial(s - 1));
			kernel *= c;
			prefix += kernel * running[n];
		}
		next[order + 1] = prefix;
		running = std::move(next);
	}
	return running[order + 1];
}

QSeries bibracket(const BiBracketIndex &idx, int order)
{
	if (idx.s.size() != idx.r.size())
		throw Error(errc::invalid_argument,
		            "bi-bracket rows must have equal length");
	for (int si : idx.s)
		if (si < 1)
			throw Error(errc::invalid_argument,
			            "bi-bracket lower entries must be >= 1");
	for (int ri : idx.r)
		if (ri < 0)
			throw Error(errc::invalid_argument,
			            "bi-bracket upper entries must be >= 0");
	bool fresh = false;
	QSeries &slot = cache_slot({'D', idx.s, idx.r, order}, fresh);
	if (!fresh)
		return slot;
	std::vector<int> d_pow(idx.s.size()), n_pow = idx.r;
	for (size_t i = 0; i < idx.s.size(); ++i)
		d_pow[i] = idx.s[i] - 1;
	ChainEnumerator en(order, d_pow, n_pow);
	en.run(0, order + 1, 0, Rational(1));
	Rational norm(1);
	for (size_t i = 0; i < idx.s.size(); ++i)
		norm *= factorial(idx.s[i] - 1) * factorial(idx.r[i]);
	en.out *= 1 / norm;
	if (en.out != bibracket_kernel_form(idx, order))
		throw Error(errc::internal,
		            "bi-bracket enumeration disagrees with kernel form: " +
		                idx.label());
	slot = en.out;
	return slot;
}

QSeries zvalue(const std::vector<int> &s, int order)
{
	for (int si : s)
		if (si < 2)
			throw Error(errc::invalid_argument,
			            "Z-value entries must be >= 2");
	bool fresh = false;
	QSeries &slot = cache_slot({'Z', s, {}, order}, fresh);
	if (!fresh)
		return slot;
	size_t l = s.size();
	QSeries result = QSeries::one(order);
	if (l > 0) {
		std::vector<QSeries> running(order + 2, QSeries(order));
		for (int n = 1; n <= order + 1; ++n)
			running[n] = QSeries::one(order);
		for (size_t level = l; level-- > 0;) {
			int si = s[level];
			std::vector<QSeries> next(order + 2, QSeries(order));
			QSeries prefix(order);
			for (int n = 1; n <= order; ++n) {
				next[n] = prefix;
				/* Q^O_s(t) = t^{s/2} even, t^{(s-1)/2}(t+1) odd. */
				QSeries kernel(order);
				if (si % 2 == 0) {
					int p = n * (si / 2);
					if (p <= order)
						kernel.add_to(p, Rational(1));
				} else {
					int p = n * ((si - 1) / 2);
					if (p <= order)
						kernel.add_to(p, Rational(1));
					if (p + n <= order)
						kernel.add_to(p + n, Rational(1));
				}
				QSeries one_minus = QSeries::one(order);
				one_minus.add_to(n, Rational(-1));
				kernel = kernel * one_minus.pow(-si);
				prefix += kernel * running[n];
			}
			next[order + 1] = prefix;
			running = std::move(next);
		}
		result = running[order + 1];
	}
	slot = result;
	return slot;
}

QSeries eisenstein(int k, int order)
{
	if (k < 2 || k % 2 != 0)
		throw Error(errc::invalid_argument,
		            "Eisenstein weight must be even and >= 2");
	QSeries g(order);
	g.set(0, -bernoulli(k) / (2 * k));
	for (int d = 1; d <= order; ++d) {
		Rational dp = ChainEnumerator::ipow(d, k - 1);
		for (int n = d; n <= order; n += d)
			g.add_to(n, dp);
	}
	g *= 1 / factorial(k - 1);
	return g;
}

std::optional<Family> family_from_string(const std::string &name)
{
	if (name == "MD")
		return Family::MD;
	if (name == "qMD")
		return Family::qMD;
	if (name == "BD")
		return Family::BD;
	if (name == "qBD")
		return Family::qBD;
	if (name == "qMZV")
		return Family::qMZV;
	if (name == "QM")
		return Family::QM;
	return std::nullopt;
}

std::string family_name(Family f)
{
	switch (f) {
	case Family::MD: return "MD";
	case Family::qMD: return "qMD";
	case Family::BD: return "BD";
	case Family::qBD: return "qBD";
	case Family::qMZV: return "qMZV";
	case Family::QM: return "QM";
	}
	return "?";
}

} // namespace qzk
