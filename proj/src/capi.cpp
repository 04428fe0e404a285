#include "qzk.h"

#include "products.hpp"
#include "reduction.hpp"
#include "selftest.hpp"
#include "span.hpp"

#include <json.hpp>

#include <cstring>
#include <string>

using namespace qzk;

struct qzk_series {
	QSeries value;
};

struct qzk_elem {
	RingElement value;
};

namespace {

thread_local std::string g_last_error;

char *dup_string(const std::string &s)
{
	char *p = new char[s.size() + 1];
	std::memcpy(p, s.c_str(), s.size() + 1);
	return p;
}

qzk_status to_status(const Error &e)
{
	switch (e.code()) {
	case errc::invalid_argument: return QZK_EINVAL;
	case errc::domain: return QZK_EDOMAIN;
	case errc::budget: return QZK_EBUDGET;
	case errc::saturated: return QZK_ESATURATED;
	case errc::internal: return QZK_EINTERNAL;
	}
	return QZK_EINTERNAL;
}

template <typename Fn> qzk_status guarded(Fn &&fn)
{
	try {
		fn();
		g_last_error.clear();
		return QZK_OK;
	} catch (const Error &e) {
		g_last_error = e.what();
		return to_status(e);
	} catch (const std::exception &e) {
		g_last_error = e.what();
		return QZK_EINVAL;
	}
}

std::vector<int> to_vec(const int *p, size_t len)
{
	if (!p && len > 0)
		throw Error(errc::invalid_argument, "null index array");
	return std::vector<int>(p, p + len);
}

TraceSpec spec_from(const char *trace, const qzk_options *opts)
{
	if (!trace)
		throw Error(errc::invalid_argument, "null trace name");
	TraceSpec spec = parse_trace_spec(trace);
	if (opts) {
		if (opts->order > 0)
			spec.q_order = opts->order;
		if (opts->degree > 0)
			spec.degree = opts->degree;
		if (opts->ybound > 0)
			spec.y_bound = opts->ybound;
		if (opts->budget_terms > 0)
			spec.term_budget = opts->budget_terms;
		if (opts->with_ab)
			spec.with_ab = true;
	}
	return spec;
}

} // namespace

extern "C" {

void qzk_options_init(qzk_options *opts)
{
	if (!opts)
		return;
	opts->order = -1;
	opts->degree = -1;
	opts->ybound = -1;
	opts->budget_terms = kDefaultTermBudget;
	opts->budget_depth = 64;
	opts->certify_steps = 0;
	opts->with_ab = 0;
}

const char *qzk_last_error(void) { return g_last_error.c_str(); }

const char *qzk_status_name(qzk_status st)
{
	switch (st) {
	case QZK_OK: return "ok";
	case QZK_EINVAL: return "invalid argument";
	case QZK_EDOMAIN: return "domain error";
	case QZK_EBUDGET: return "budget exceeded";
	case QZK_ESATURATED: return "laurent truncation saturated";
	case QZK_EINTERNAL: return "internal error";
	}
	return "unknown";
}

void qzk_string_free(char *s) { delete[] s; }
void qzk_series_free(qzk_series *s) { delete s; }
void qzk_elem_free(qzk_elem *e) { delete e; }

qzk_status qzk_bracket(const int *s, size_t len, int order, qzk_series **out)
{
	return guarded([&] {
		if (!out)
			throw Error(errc::invalid_argument, "null output");
		*out = new qzk_series{bracket(BracketIndex{to_vec(s, len)}, order)};
	});
}

qzk_status qzk_bibracket(const int *s, const int *r, size_t len, int order,
                         qzk_series **out)
{
	return guarded([&] {
		if (!out)
			throw Error(errc::invalid_argument, "null output");
		*out = new qzk_series{
		    bibracket(BiBracketIndex{to_vec(s, len), to_vec(r, len)}, order)};
	});
}

qzk_status qzk_zvalue(const int *s, size_t len, int order, qzk_series **out)
{
	return guarded([&] {
		if (!out)
			throw Error(errc::invalid_argument, "null output");
		*out = new qzk_series{zvalue(to_vec(s, len), order)};
	});
}

qzk_status qzk_eisenstein(int weight, int order, qzk_series **out)
{
	return guarded([&] {
		if (!out)
			throw Error(errc::invalid_argument, "null output");
		*out = new qzk_series{eisenstein(weight, order)};
	});
}

int qzk_series_order(const qzk_series *s) { return s ? s->value.order() : -1; }

qzk_status qzk_series_coeff(const qzk_series *s, int k, char **out)
{
	return guarded([&] {
		if (!s || !out)
			throw Error(errc::invalid_argument, "null argument");
		if (k < 0 || k > s->value.order())
			throw Error(errc::invalid_argument,
			            "coefficient index out of range");
		*out = dup_string(rat_str(s->value[k]));
	});
}

qzk_status qzk_series_json(const qzk_series *s, char **out)
{
	return guarded([&] {
		if (!s || !out)
			throw Error(errc::invalid_argument, "null argument");
		*out = dup_string(s->value.to_json());
	});
}

qzk_status qzk_series_text(const qzk_series *s, char **out)
{
	return guarded([&] {
		if (!s || !out)
			throw Error(errc::invalid_argument, "null argument");
		*out = dup_string(s->value.str());
	});
}

qzk_status qzk_trace_build(const char *trace, const qzk_options *opts,
                           qzk_elem **out)
{
	return guarded([&] {
		if (!out)
			throw Error(errc::invalid_argument, "null output");
		*out = new qzk_elem{build_trace(spec_from(trace, opts))};
	});
}

qzk_status qzk_elem_json(const qzk_elem *e, char **out)
{
	return guarded([&] {
		if (!e || !out)
			throw Error(errc::invalid_argument, "null argument");
		*out = dup_string(e->value.to_json());
	});
}

qzk_status qzk_elem_coeff_json(const qzk_elem *e, const char *monomial,
                               char **out)
{
	return guarded([&] {
		if (!e || !out || !monomial)
			throw Error(errc::invalid_argument, "null argument");
		Exponents fexp = e->value.parse_monomial(monomial);
		YLayer layer = e->value.coeff(fexp);
		nlohmann::json j;
		j["monomial"] = e->value.monomial_string(fexp);
		auto &terms = j["coeff"] = nlohmann::json::object();
		for (const auto &[yexp, c] : layer.terms())
			terms[ylayer_key(yexp, e->value.vars()->y)] =
			    nlohmann::json::parse(c.to_json());
		*out = dup_string(j.dump());
	});
}

qzk_status qzk_elem_y0(const qzk_elem *e, qzk_elem **out)
{
	return guarded([&] {
		if (!e || !out)
			throw Error(errc::invalid_argument, "null argument");
		*out = new qzk_elem{y0_coefficient(e->value)};
	});
}

qzk_status qzk_reduce(const char *spec_json, int certify_order,
                      const qzk_options *opts, char **report_json)
{
	return guarded([&] {
		if (!spec_json || !report_json)
			throw Error(errc::invalid_argument, "null argument");
		SumSpec spec = SumSpec::from_json(spec_json);
		ReduceOptions ropts;
		int order = certify_order > 0 ? certify_order : 15;
		if (opts && opts->certify_steps)
			ropts.certify_order = order;
		if (opts && opts->budget_depth > 0)
			ropts.max_depth = opts->budget_depth;
		BiBracketCombination combo = reduce_sum(spec, ropts);
		QSeries lhs = sumspec_eval(spec, order, ropts.tuple_budget);
		QSeries rhs = combo.evaluate(order);
		if (!(lhs == rhs))
			throw Error(errc::internal,
			            "reduction certificate failed at order " +
			                std::to_string(order));
		nlohmann::json j;
		j["input"] = nlohmann::json::parse(spec.to_json());
		j["combination"] = nlohmann::json::parse(combo.to_json());
		j["certificate"] = {
		    {"order", order},
		    {"input_eval", nlohmann::json::parse(lhs.to_json())},
		    {"output_eval", nlohmann::json::parse(rhs.to_json())},
		    {"equal", true},
		};
		j["max_weight"] = combo.max_weight();
		j["all_qbd"] = combo.all_qbd();
		*report_json = dup_string(j.dump());
	});
}

qzk_status qzk_verify(const char *theorem, const qzk_options *opts,
                      char **report_json, int *passed)
{
	return guarded([&] {
		if (!theorem || !report_json || !passed)
			throw Error(errc::invalid_argument, "null argument");
		int order = opts ? opts->order : -1;
		int degree = opts ? opts->degree : -1;
		long long budget = opts && opts->budget_terms > 0
		                       ? opts->budget_terms
		                       : kDefaultTermBudget;
		VerifyReport report = verify_theorem(theorem, order, degree, budget);
		*report_json = dup_string(report.to_json());
		*passed = report.passed ? 1 : 0;
	});
}

qzk_status qzk_relations(const char *family, int max_weight, int order,
                         char **report_json)
{
	return guarded([&] {
		if (!family || !report_json)
			throw Error(errc::invalid_argument, "null argument");
		auto f = family_from_string(family);
		if (!f)
			throw Error(errc::invalid_argument,
			            std::string("unknown family: ") + family);
		if (order <= 0)
			order = 40;
		auto basis = enumerate_basis(*f, max_weight, order);
		auto kernel = find_relations(basis, order);
		nlohmann::json j;
		j["family"] = family;
		j["max_weight"] = max_weight;
		j["order"] = order;
		j["note"] = "candidate relations at order " + std::to_string(order);
		auto &lbls = j["basis"] = nlohmann::json::array();
		for (const auto &b : basis)
			lbls.push_back(b.label);
		auto &arr = j["kernel"] = nlohmann::json::array();
		for (const auto &rel : kernel) {
			nlohmann::json jr = nlohmann::json::object();
			for (const auto &[label, c] : rel)
				jr[label] = rat_str(c);
			arr.push_back(std::move(jr));
		}
		*report_json = dup_string(j.dump());
	});
}

qzk_status qzk_selftest(char **report_json, int *passed)
{
	return guarded([&] {
		if (!report_json || !passed)
			throw Error(errc::invalid_argument, "null argument");
		auto results = run_selftest();
		bool ok = true;
		nlohmann::json j;
		auto &arr = j["checks"] = nlohmann::json::array();
		for (const auto &r : results) {
			ok = ok && r.ok;
			nlohmann::json jr;
			jr["name"] = r.name;
			jr["ok"] = r.ok;
			if (!r.detail.empty())
				jr["detail"] = r.detail;
			arr.push_back(std::move(jr));
		}
		j["passed"] = ok;
		*report_json = dup_string(j.dump());
		*passed = ok ? 1 : 0;
	});
}

} // extern "C"
