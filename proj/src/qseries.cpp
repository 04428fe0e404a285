#include "qseries.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace qzk {

QSeries::QSeries(int order)
{
	if (order < 0)
		throw Error(errc::invalid_argument, "negative truncation order");
	coeff_.assign(order + 1, Rational(0));
}

QSeries QSeries::one(int order) { return constant(Rational(1), order); }

QSeries QSeries::constant(const Rational &c, int order)
{
	QSeries s(order);
	s.coeff_[0] = c;
	return s;
}

QSeries QSeries::monomial(int power, const Rational &c, int order)
{
	QSeries s(order);
	if (power < 0)
		throw Error(errc::invalid_argument, "negative q-power");
	if (power <= order)
		s.coeff_[power] = c;
	return s;
}

void QSeries::set(int k, Rational v)
{
	if (k < 0 || k > order())
		throw Error(errc::invalid_argument, "coefficient index out of range");
	coeff_[k] = std::move(v);
}

bool QSeries::is_zero() const
{
	return std::all_of(coeff_.begin(), coeff_.end(),
	                   [](const Rational &c) { return c == 0; });
}

int QSeries::valuation() const
{
	for (size_t k = 0; k < coeff_.size(); ++k)
		if (coeff_[k] != 0)
			return static_cast<int>(k);
	return order() + 1;
}

QSeries QSeries::truncated(int order) const
{
	if (order >= this->order())
		return *this;
	QSeries s(order);
	for (int k = 0; k <= order; ++k)
		s.coeff_[k] = coeff_[k];
	return s;
}

QSeries &QSeries::operator+=(const QSeries &o)
{
	if (o.order() < order())
		*this = truncated(o.order());
	for (int k = 0; k <= order(); ++k)
		coeff_[k] += o.coeff_[k];
	return *this;
}

QSeries &QSeries::operator-=(const QSeries &o)
{
	if (o.order() < order())
		*this = truncated(o.order());
	for (int k = 0; k <= order(); ++k)
		coeff_[k] -= o.coeff_[k];
	return *this;
}

QSeries operator*(const QSeries &a, const QSeries &b)
{
	int n = std::min(a.order(), b.order());
	QSeries r(n);
	for (int i = 0; i <= n; ++i) {
		if (a.coeff_[i] == 0)
			continue;
		for (int j = 0; i + j <= n; ++j) {
			if (b.coeff_[j] == 0)
				continue;
			r.coeff_[i + j] += a.coeff_[i] * b.coeff_[j];
		}
	}
	return r;
}

QSeries QSeries::operator-() const
{
	QSeries r(order());
	for (int k = 0; k <= order(); ++k)
		r.coeff_[k] = -coeff_[k];
	return r;
}

QSeries &QSeries::operator*=(const Rational &c)
{
	for (auto &x : coeff_)
		x *= c;
	return *this;
}

QSeries QSeries::inverse() const
{
	if (coeff_[0] == 0)
		throw Error(errc::domain, "series inverse needs a unit constant term");
	/* b_0 = 1/a_0 and b_n = -(1/a_0) sum_{k=1}^n a_k b_{n-k}. */
	QSeries r(order());
	Rational c0 = 1 / coeff_[0];
	r.coeff_[0] = c0;
	for (int n = 1; n <= order(); ++n) {
		Rational acc(0);
		for (int k = 1; k <= n; ++k)
			acc += coeff_[k] * r.coeff_[n - k];
		r.coeff_[n] = -c0 * acc;
	}
	return r;
}

QSeries QSeries::pow(int e) const
{
	if (e < 0)
		return inverse().pow(-e);
	QSeries r = one(order());
	QSeries base = *this;
	while (e > 0) {
		if (e & 1)
			r = r * base;
		base = base * base;
		e >>= 1;
	}
	return r;
}

QSeries QSeries::shifted(int k) const
{
	if (k < 0)
		throw Error(errc::invalid_argument, "negative q-shift");
	QSeries r(order());
	for (int i = 0; i + k <= order(); ++i)
		r.coeff_[i + k] = coeff_[i];
	return r;
}

std::string QSeries::to_json() const
{
	nlohmann::json j;
	j["N"] = order();
	auto &arr = j["coeffs"] = nlohmann::json::array();
	for (const auto &c : coeff_)
		arr.push_back(rat_str(c));
	return j.dump();
}

QSeries QSeries::from_json(const std::string &text)
{
	nlohmann::json j = nlohmann::json::parse(text);
	int n = j.at("N").get<int>();
	QSeries s(n);
	const auto &arr = j.at("coeffs");
	if (static_cast<int>(arr.size()) != n + 1)
		throw Error(errc::invalid_argument, "coefficient count does not match N");
	for (int k = 0; k <= n; ++k)
		s.coeff_[k] = rat_parse(arr[k].get<std::string>());
	return s;
}

std::string QSeries::str() const
{
	if (is_zero())
		return "0 + O(q^" + std::to_string(order() + 1) + ")";
	std::ostringstream os;
	bool first = true;
	for (int k = 0; k <= order(); ++k) {
		if (coeff_[k] == 0)
			continue;
		if (!first)
			os << " + ";
		first = false;
		os << rat_str(coeff_[k]);
		if (k >= 1)
			os << "*q";
		if (k >= 2)
			os << "^" << k;
	}
	os << " + O(q^" << order() + 1 << ")";
	return os.str();
}

QSeries geometric_series(int step, int start, int order)
{
	if (step <= 0)
		throw Error(errc::invalid_argument, "geometric series needs step >= 1");
	if (start < 0)
		throw Error(errc::invalid_argument, "geometric series needs start >= 0");
	QSeries s(order);
	for (long n = start; n * step <= order; ++n)
		s.add_to(static_cast<int>(n * step), Rational(1));
	return s;
}

bool prefix_equal(const QSeries &a, const QSeries &b, int upto)
{
	if (upto > a.order() || upto > b.order())
		throw Error(errc::invalid_argument, "prefix beyond truncation order");
	for (int k = 0; k <= upto; ++k)
		if (a[k] != b[k])
			return false;
	return true;
}

} // namespace qzk
