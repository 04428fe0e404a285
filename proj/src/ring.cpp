#include "ring.hpp"

#include <json.hpp>

#include <algorithm>

namespace qzk {

int total_degree(const Exponents &e)
{
	int d = 0;
	for (int x : e)
		d += x;
	return d;
}

LinearForm &LinearForm::add(const std::string &var, int c)
{
	coeffs[var] += c;
	if (coeffs[var] == 0)
		coeffs.erase(var);
	return *this;
}

bool LinearForm::empty() const { return coeffs.empty(); }

LinearForm operator+(LinearForm a, const LinearForm &b)
{
	for (const auto &[v, c] : b.coeffs)
		a.add(v, c);
	return a;
}

LinearForm operator-(LinearForm a, const LinearForm &b)
{
	for (const auto &[v, c] : b.coeffs)
		a.add(v, -c);
	return a;
}

int VarTable::formal_index(const std::string &name) const
{
	for (size_t i = 0; i < formal.size(); ++i)
		if (formal[i] == name)
			return static_cast<int>(i);
	return -1;
}

int VarTable::y_index(const std::string &name) const
{
	for (size_t i = 0; i < y.size(); ++i)
		if (y[i] == name)
			return static_cast<int>(i);
	return -1;
}

VarTablePtr make_vars(std::vector<std::string> formal,
                      std::vector<std::string> y,
                      std::vector<std::string> exponent_vars)
{
	auto t = std::make_shared<VarTable>();
	t->formal = std::move(formal);
	t->y = std::move(y);
	t->is_exponent.assign(t->formal.size(), false);
	for (const auto &e : exponent_vars) {
		int i = t->formal_index(e);
		if (i < 0)
			throw Error(errc::invalid_argument,
			            "exponent variable not declared: " + e);
		t->is_exponent[i] = true;
	}
	return t;
}

Truncation min_truncation(const Truncation &a, const Truncation &b)
{
	return Truncation{std::min(a.q_order, b.q_order),
	                  std::min(a.degree, b.degree),
	                  std::min(a.exp_degree, b.exp_degree),
	                  std::min(a.y_bound, b.y_bound)};
}

void YLayer::accumulate(const Exponents &yexp, const QSeries &c)
{
	if (static_cast<int>(yexp.size()) != dim_)
		throw Error(errc::invalid_argument, "y-exponent dimension mismatch");
	if (c.is_zero())
		return;
	for (int e : yexp) {
		if (e > bound_ || e < -bound_) {
			saturated_ = true;
			return;
		}
	}
	auto it = terms_.find(yexp);
	if (it == terms_.end()) {
		terms_.emplace(yexp, c);
	} else {
		it->second += c;
		if (it->second.is_zero())
			terms_.erase(it);
	}
}

void YLayer::prune()
{
	for (auto it = terms_.begin(); it != terms_.end();) {
		if (it->second.is_zero())
			it = terms_.erase(it);
		else
			++it;
	}
}

QSeries YLayer::y0_part(int order) const
{
	Exponents zero(dim_, 0);
	auto it = terms_.find(zero);
	if (it == terms_.end())
		return QSeries(order);
	return it->second.truncated(order);
}

RingElement::RingElement(VarTablePtr vars, Truncation tr)
    : vars_(std::move(vars)), trunc_(tr)
{
	if (!vars_)
		throw Error(errc::invalid_argument, "null variable table");
	if (trunc_.q_order < 0 || trunc_.degree < 0 || trunc_.exp_degree < 0 ||
	    trunc_.y_bound < 0)
		throw Error(errc::invalid_argument, "negative truncation bound");
}

RingElement RingElement::constant(VarTablePtr vars, Truncation tr, const Rational &c)
{
	RingElement e(std::move(vars), tr);
	e.accumulate(Exponents(e.vars_->formal.size(), 0),
	             Exponents(e.vars_->y.size(), 0),
	             QSeries::constant(c, tr.q_order));
	return e;
}

RingElement RingElement::from_qseries(VarTablePtr vars, Truncation tr, const QSeries &s)
{
	RingElement e(std::move(vars), tr);
	e.accumulate(Exponents(e.vars_->formal.size(), 0),
	             Exponents(e.vars_->y.size(), 0), s.truncated(tr.q_order));
	return e;
}

RingElement RingElement::variable(VarTablePtr vars, Truncation tr, const std::string &name)
{
	RingElement e(std::move(vars), tr);
	int i = e.vars_->formal_index(name);
	if (i < 0)
		throw Error(errc::invalid_argument, "undeclared variable: " + name);
	Exponents fexp(e.vars_->formal.size(), 0);
	fexp[i] = 1;
	e.accumulate(fexp, Exponents(e.vars_->y.size(), 0),
	             QSeries::one(tr.q_order));
	return e;
}

RingElement RingElement::y_power(VarTablePtr vars, Truncation tr, const Exponents &yexp)
{
	RingElement e(std::move(vars), tr);
	e.accumulate(Exponents(e.vars_->formal.size(), 0), yexp,
	             QSeries::one(tr.q_order));
	return e;
}

long long RingElement::term_count() const
{
	long long n = 0;
	for (const auto &[fexp, layer] : terms_)
		n += static_cast<long long>(layer.terms().size());
	return n;
}

int RingElement::ordinary_degree(const Exponents &fexp) const
{
	int d = 0;
	for (size_t i = 0; i < fexp.size(); ++i)
		if (!vars_->is_exponent[i])
			d += fexp[i];
	return d;
}

int RingElement::exponent_degree(const Exponents &fexp) const
{
	int d = 0;
	for (size_t i = 0; i < fexp.size(); ++i)
		if (vars_->is_exponent[i])
			d += fexp[i];
	return d;
}

void RingElement::accumulate(const Exponents &fexp, const Exponents &yexp, const QSeries &c)
{
	if (fexp.size() != vars_->formal.size())
		throw Error(errc::invalid_argument, "formal exponent size mismatch");
	for (int e : fexp)
		if (e < 0)
			throw Error(errc::invalid_argument, "negative formal exponent");
	if (ordinary_degree(fexp) > trunc_.degree ||
	    exponent_degree(fexp) > trunc_.exp_degree) {
		degree_clipped_ = true;
		return;
	}
	auto it = terms_.find(fexp);
	if (it == terms_.end())
		it = terms_.emplace(fexp, YLayer(static_cast<int>(vars_->y.size()),
		                                 trunc_.y_bound)).first;
	it->second.accumulate(yexp, c.truncated(trunc_.q_order));
	if (it->second.saturated())
		saturated_ = true;
	if (it->second.is_zero())
		terms_.erase(it);
}

void RingElement::prune()
{
	for (auto it = terms_.begin(); it != terms_.end();) {
		it->second.prune();
		if (it->second.is_zero())
			it = terms_.erase(it);
		else
			++it;
	}
}

static void remap(const Exponents &src, const std::vector<int> &map, Exponents &dst)
{
	for (size_t i = 0; i < src.size(); ++i) {
		if (src[i] == 0)
			continue;
		dst[map[i]] = src[i];
	}
}

std::pair<RingElement, RingElement> align(const RingElement &a, const RingElement &b)
{
	Truncation tr = min_truncation(a.trunc(), b.trunc());
	if (a.vars() == b.vars() || *a.vars() == *b.vars()) {
		auto shrink = [&tr](const RingElement &e) {
			RingElement r(e.vars(), tr);
			if (e.saturated())
				r.mark_saturated();
			for (const auto &[fexp, layer] : e.terms())
				for (const auto &[yexp, c] : layer.terms())
					r.accumulate(fexp, yexp, c);
			return r;
		};
		if (tr == a.trunc() && tr == b.trunc())
			return {a, b};
		return {shrink(a), shrink(b)};
	}

	/* Union of the declarations; exponent flags must agree on shared
	 * names and y-variable order is merged the same way. */
	auto merged = std::make_shared<VarTable>(*a.vars());
	for (size_t i = 0; i < b.vars()->formal.size(); ++i) {
		const auto &name = b.vars()->formal[i];
		int j = merged->formal_index(name);
		if (j < 0) {
			merged->formal.push_back(name);
			merged->is_exponent.push_back(b.vars()->is_exponent[i]);
		} else if (merged->is_exponent[j] != b.vars()->is_exponent[i]) {
			throw Error(errc::invalid_argument,
			            "variable class mismatch on: " + name);
		}
	}
	for (const auto &name : b.vars()->y)
		if (merged->y_index(name) < 0)
			merged->y.push_back(name);

	auto remap_elem = [&](const RingElement &e) {
		std::vector<int> fmap(e.vars()->formal.size());
		std::vector<int> ymap(e.vars()->y.size());
		for (size_t i = 0; i < fmap.size(); ++i)
			fmap[i] = merged->formal_index(e.vars()->formal[i]);
		for (size_t i = 0; i < ymap.size(); ++i)
			ymap[i] = merged->y_index(e.vars()->y[i]);
		RingElement r(merged, tr);
		if (e.saturated())
			r.mark_saturated();
		for (const auto &[fexp, layer] : e.terms()) {
			Exponents f2(merged->formal.size(), 0);
			remap(fexp, fmap, f2);
			for (const auto &[yexp, c] : layer.terms()) {
				Exponents y2(merged->y.size(), 0);
				remap(yexp, ymap, y2);
				r.accumulate(f2, y2, c);
			}
		}
		return r;
	};
	return {remap_elem(a), remap_elem(b)};
}

RingElement &RingElement::operator+=(const RingElement &o)
{
	auto [a, b] = align(*this, o);
	for (const auto &[fexp, layer] : b.terms())
		for (const auto &[yexp, c] : layer.terms())
			a.accumulate(fexp, yexp, c);
	if (b.saturated())
		a.saturated_ = true;
	if (b.degree_clipped_ || degree_clipped_)
		a.degree_clipped_ = true;
	*this = std::move(a);
	return *this;
}

RingElement &RingElement::operator-=(const RingElement &o) { return *this += -o; }

RingElement RingElement::operator-() const
{
	RingElement r(vars_, trunc_);
	r.saturated_ = saturated_;
	r.degree_clipped_ = degree_clipped_;
	for (const auto &[fexp, layer] : terms_)
		for (const auto &[yexp, c] : layer.terms())
			r.accumulate(fexp, yexp, -c);
	return r;
}

RingElement operator*(const RingElement &a0, const RingElement &b0)
{
	auto [a, b] = align(a0, b0);
	RingElement r(a.vars(), a.trunc());
	if (a.saturated() || b.saturated())
		r.mark_saturated();
	r.degree_clipped_ = a0.degree_clipped() || b0.degree_clipped();
	Exponents fexp(a.vars()->formal.size());
	Exponents yexp(a.vars()->y.size());
	for (const auto &[f1, l1] : a.terms()) {
		for (const auto &[f2, l2] : b.terms()) {
			for (size_t i = 0; i < fexp.size(); ++i)
				fexp[i] = f1[i] + f2[i];
			if (r.ordinary_degree(fexp) > r.trunc().degree ||
			    r.exponent_degree(fexp) > r.trunc().exp_degree) {
				r.degree_clipped_ = true;
				continue;
			}
			for (const auto &[y1, c1] : l1.terms()) {
				for (const auto &[y2, c2] : l2.terms()) {
					for (size_t i = 0; i < yexp.size(); ++i)
						yexp[i] = y1[i] + y2[i];
					r.accumulate(fexp, yexp, c1 * c2);
				}
			}
		}
	}
	return r;
}

RingElement &RingElement::operator*=(const Rational &c)
{
	if (c == 0) {
		terms_.clear();
		return *this;
	}
	for (auto &[fexp, layer] : terms_) {
		auto copy = layer;
		YLayer out(layer.dim(), layer.bound());
		if (layer.saturated())
			out.mark_saturated();
		for (const auto &[yexp, s] : copy.terms())
			out.accumulate(yexp, s * c);
		layer = std::move(out);
	}
	return *this;
}

RingElement &RingElement::mul_qseries(const QSeries &s)
{
	RingElement r(vars_, trunc_);
	r.saturated_ = saturated_;
	r.degree_clipped_ = degree_clipped_;
	for (const auto &[fexp, layer] : terms_)
		for (const auto &[yexp, c] : layer.terms())
			r.accumulate(fexp, yexp, c * s);
	*this = std::move(r);
	return *this;
}

RingElement RingElement::pow(int e) const
{
	if (e < 0)
		throw Error(errc::invalid_argument, "negative ring power");
	RingElement r = constant(vars_, trunc_, Rational(1));
	for (int i = 0; i < e; ++i)
		r = r * *this;
	return r;
}

YLayer RingElement::coeff(const Exponents &fexp) const
{
	if (fexp.size() != vars_->formal.size())
		throw Error(errc::invalid_argument, "formal exponent size mismatch");
	if (ordinary_degree(fexp) > trunc_.degree ||
	    exponent_degree(fexp) > trunc_.exp_degree)
		throw Error(errc::invalid_argument, "monomial beyond degree bound");
	auto it = terms_.find(fexp);
	if (it == terms_.end())
		return YLayer(static_cast<int>(vars_->y.size()), trunc_.y_bound);
	return it->second;
}

QSeries RingElement::coeff_y0(const Exponents &fexp) const
{
	return coeff(fexp).y0_part(trunc_.q_order);
}

RingElement RingElement::y0_raw() const
{
	RingElement r(vars_, trunc_);
	Exponents zero(vars_->y.size(), 0);
	for (const auto &[fexp, layer] : terms_) {
		auto it = layer.terms().find(zero);
		if (it != layer.terms().end())
			r.accumulate(fexp, zero, it->second);
	}
	return r;
}

bool RingElement::operator==(const RingElement &o) const
{
	return *vars_ == *o.vars_ && trunc_ == o.trunc_ && terms_ == o.terms_;
}

std::string RingElement::monomial_string(const Exponents &fexp) const
{
	std::string s;
	for (size_t i = 0; i < fexp.size(); ++i) {
		if (fexp[i] == 0)
			continue;
		if (!s.empty())
			s += "*";
		s += vars_->formal[i];
		if (fexp[i] != 1)
			s += "^" + std::to_string(fexp[i]);
	}
	return s.empty() ? "1" : s;
}

std::string ylayer_key(const Exponents &yexp, const std::vector<std::string> &yvars)
{
	std::string s;
	for (size_t i = 0; i < yexp.size(); ++i) {
		if (yexp[i] == 0)
			continue;
		if (!s.empty())
			s += "*";
		s += yvars[i];
		if (yexp[i] != 1)
			s += "^" + std::to_string(yexp[i]);
	}
	return s.empty() ? "1" : s;
}

Exponents RingElement::parse_monomial(const std::string &mono) const
{
	Exponents fexp(vars_->formal.size(), 0);
	if (mono == "1" || mono.empty())
		return fexp;
	size_t pos = 0;
	while (pos < mono.size()) {
		size_t star = mono.find('*', pos);
		std::string tok = mono.substr(pos, star == std::string::npos
		                                       ? std::string::npos
		                                       : star - pos);
		pos = star == std::string::npos ? mono.size() : star + 1;
		size_t caret = tok.find('^');
		std::string name = tok.substr(0, caret);
		int e = 1;
		if (caret != std::string::npos)
			e = std::stoi(tok.substr(caret + 1));
		int i = vars_->formal_index(name);
		if (i < 0)
			throw Error(errc::invalid_argument, "unknown variable: " + name);
		if (e < 0)
			throw Error(errc::invalid_argument, "negative formal exponent");
		fexp[i] += e;
	}
	return fexp;
}

static nlohmann::json ring_json(const RingElement &e)
{
	nlohmann::json j;
	j["formal_vars"] = e.vars()->formal;
	j["y_vars"] = e.vars()->y;
	j["q_order"] = e.trunc().q_order;
	j["degree_bound"] = e.trunc().degree;
	j["y_bound"] = e.trunc().y_bound;
	j["saturated"] = e.saturated();
	auto &terms = j["terms"] = nlohmann::json::object();
	for (const auto &[fexp, layer] : e.terms()) {
		nlohmann::json inner = nlohmann::json::object();
		for (const auto &[yexp, c] : layer.terms())
			inner[ylayer_key(yexp, e.vars()->y)] =
			    nlohmann::json::parse(c.to_json());
		terms[e.monomial_string(fexp)] = std::move(inner);
	}
	return j;
}

std::string RingElement::to_json() const { return ring_json(*this).dump(); }

std::string RingElement::to_json_pretty() const { return ring_json(*this).dump(2); }

RingElement exp_truncated(const RingElement &p)
{
	const auto &tr = p.trunc();
	Exponents yzero(p.vars()->y.size(), 0);
	for (const auto &[fexp, layer] : p.terms()) {
		if (total_degree(fexp) > 0)
			continue;
		for (const auto &[yexp, c] : layer.terms()) {
			if (yexp == yzero) {
				if (c[0] != 0)
					throw Error(errc::domain,
					            "exp of a nonzero q-constant");
			} else if (c.valuation() == 0) {
				throw Error(errc::domain,
				            "exp of a q-constant Laurent term");
			}
		}
	}
	/* Every admissible term of p now carries q-valuation or formal
	 * degree at least 1, so p^k dies once k exceeds the combined
	 * budget. */
	int kmax = tr.q_order + tr.degree + tr.exp_degree + 1;
	RingElement r = RingElement::constant(p.vars(), tr, Rational(1));
	RingElement inc = r;
	for (int k = 1; k <= kmax + 1; ++k) {
		inc = inc * p;
		inc *= Rational(frac(1, k));
		if (inc.is_zero())
			return r;
		r += inc;
	}
	throw Error(errc::internal, "exp_truncated did not terminate");
}

RingElement bell_coefficient(const std::vector<RingElement> &derivs, int m)
{
	if (m <= 0)
		throw Error(errc::invalid_argument, "bell coefficient needs m >= 1");
	if (static_cast<int>(derivs.size()) < m)
		throw Error(errc::invalid_argument,
		            "need the first m derivatives of f");
	const RingElement &first = derivs.front();
	RingElement acc(first.vars(), first.trunc());

	/* Recurse over k_t with sum t*k_t = m, multiplying in
	 * (derivs[t]/t!)^{k_t} / k_t!. */
	auto rec = [&](auto &&self, int t, int remaining, RingElement partial) -> void {
		if (remaining == 0) {
			acc += partial;
			return;
		}
		if (t > remaining)
			return;
		RingElement scaled = derivs[t - 1];
		scaled *= Rational(1 / factorial(t));
		RingElement power = partial;
		for (int k = 0; k * t <= remaining; ++k) {
			if (k > 0) {
				power = power * scaled;
				power *= Rational(frac(1, k));
			}
			self(self, t + 1, remaining - k * t, power);
		}
	};
	rec(rec, 1, m, RingElement::constant(first.vars(), first.trunc(), Rational(1)));
	return acc;
}

} // namespace qzk
