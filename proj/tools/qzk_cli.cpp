#include "qzk.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

struct Common {
	int order = -1;
	int degree = -1;
	int ybound = -1;
	long long budget_terms = -1;
	int budget_depth = -1;
	bool certify_steps = false;
	bool parallel = false;
	std::string format = "json";
};

void add_common(CLI::App *cmd, Common &c)
{
	cmd->add_option("--order", c.order, "q-truncation order")
	    ->envname("QZK_ORDER");
	cmd->add_option("--degree", c.degree, "formal total-degree bound")
	    ->envname("QZK_DEGREE");
	cmd->add_option("--ybound", c.ybound, "Laurent exponent bound")
	    ->envname("QZK_YBOUND");
	cmd->add_option("--budget-terms", c.budget_terms,
	                "term budget for product expansion")
	    ->envname("QZK_BUDGET_TERMS");
	cmd->add_option("--budget-depth", c.budget_depth,
	                "rewrite recursion depth budget")
	    ->envname("QZK_BUDGET_DEPTH");
	cmd->add_flag("--certify-steps", c.certify_steps,
	              "oracle-check every rewrite step");
	cmd->add_flag("--parallel", c.parallel,
	              "run independent checks on separate threads");
	cmd->add_option("--format", c.format, "output format: json or text")
	    ->envname("QZK_FORMAT")
	    ->check(CLI::IsMember({"json", "text"}));
}

qzk_options make_options(const Common &c)
{
	qzk_options o;
	qzk_options_init(&o);
	o.order = c.order;
	o.degree = c.degree;
	o.ybound = c.ybound;
	if (c.budget_terms > 0)
		o.budget_terms = c.budget_terms;
	if (c.budget_depth > 0)
		o.budget_depth = c.budget_depth;
	o.certify_steps = c.certify_steps ? 1 : 0;
	return o;
}

int fail(qzk_status st)
{
	std::cerr << "error: " << qzk_status_name(st) << ": " << qzk_last_error()
	          << "\n";
	return st == QZK_EINVAL ? 2 : 1;
}

std::string take(char *s)
{
	std::string out = s ? s : "";
	qzk_string_free(s);
	return out;
}

int emit_series(qzk_series *s, const Common &c)
{
	char *text = nullptr;
	qzk_status st = c.format == "text" ? qzk_series_text(s, &text)
	                                   : qzk_series_json(s, &text);
	if (st != QZK_OK) {
		qzk_series_free(s);
		return fail(st);
	}
	std::cout << take(text) << "\n";
	qzk_series_free(s);
	return 0;
}

std::vector<int> parse_index_list(const std::string &csv)
{
	std::vector<int> out;
	if (csv.empty())
		return out;
	std::stringstream ss(csv);
	std::string tok;
	while (std::getline(ss, tok, ','))
		out.push_back(std::stoi(tok));
	return out;
}

int default_order(const Common &c) { return c.order > 0 ? c.order : 20; }

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"qzk: exact q-series kernel for multiple q-zeta values"};
	app.require_subcommand(1);

	/* bracket [s...] */
	Common c_bracket;
	std::vector<int> bracket_idx;
	auto *cmd_bracket = app.add_subcommand(
	    "bracket", "bracket [s1,...,sl] as a truncated q-series");
	cmd_bracket->add_option("s", bracket_idx, "index entries (s_i >= 1)");
	add_common(cmd_bracket, c_bracket);

	/* bibracket --s ... --r ... */
	Common c_bibracket;
	std::string bib_s, bib_r;
	auto *cmd_bibracket =
	    app.add_subcommand("bibracket", "bi-bracket with rows s and r");
	cmd_bibracket->add_option("--s", bib_s, "lower row, e.g. 2,1")->required();
	cmd_bibracket->add_option("--r", bib_r, "upper row, e.g. 1,0")->required();
	add_common(cmd_bibracket, c_bibracket);

	/* zvalue [s...] */
	Common c_zvalue;
	std::vector<int> z_idx;
	auto *cmd_zvalue =
	    app.add_subcommand("zvalue", "Okounkov Z(s1,...,sl), entries >= 2");
	cmd_zvalue->add_option("s", z_idx, "index entries (s_i >= 2)");
	add_common(cmd_zvalue, c_zvalue);

	/* eisenstein k */
	Common c_eis;
	int eis_weight = 2;
	auto *cmd_eis =
	    app.add_subcommand("eisenstein", "Eisenstein series G_k, even k >= 2");
	cmd_eis->add_option("k", eis_weight, "weight")->required();
	add_common(cmd_eis, c_eis);

	/* expand */
	Common c_expand;
	std::string expand_trace, expand_coeff;
	bool expand_with_ab = false, expand_y0 = false;
	auto *cmd_expand = app.add_subcommand(
	    "expand", "expand a product trace into formal variables");
	cmd_expand
	    ->add_option("--trace", expand_trace,
	                 "lemma31 | bo | thm32:<r> | pn:<N>")
	    ->required();
	cmd_expand->add_flag("--with-ab", expand_with_ab,
	                     "include the formal exponents a, b (pn traces)");
	cmd_expand->add_flag("--y0", expand_y0, "keep only the y^0 part");
	cmd_expand->add_option("--coeff", expand_coeff,
	                       "extract one coefficient, e.g. z^2*w");
	add_common(cmd_expand, c_expand);

	/* reduce */
	Common c_reduce;
	std::string reduce_file;
	int reduce_order = -1;
	auto *cmd_reduce = app.add_subcommand(
	    "reduce", "rewrite a constrained lattice sum into bi-brackets");
	cmd_reduce->add_option("--spec", reduce_file, "SumSpec JSON file, - for stdin")
	    ->required();
	cmd_reduce->add_option("--certify-order", reduce_order,
	                       "q-order of the evaluation certificate");
	add_common(cmd_reduce, c_reduce);

	/* verify */
	Common c_verify;
	std::vector<std::string> verify_theorems;
	auto *cmd_verify =
	    app.add_subcommand("verify", "verify a theorem's span memberships");
	cmd_verify
	    ->add_option("--theorem", verify_theorems,
	                 "lemma31 | bo | thm32:<r> | thm45 | thm54:<N>")
	    ->required();
	add_common(cmd_verify, c_verify);

	/* relations */
	Common c_rel;
	std::string rel_family = "MD";
	int rel_weight = 3;
	auto *cmd_rel = app.add_subcommand(
	    "relations", "candidate linear relations inside a family span");
	cmd_rel->add_option("--family", rel_family, "MD|qMD|BD|qBD|qMZV|QM");
	cmd_rel->add_option("--max-weight", rel_weight, "weight bound");
	add_common(cmd_rel, c_rel);

	/* selftest */
	Common c_self;
	auto *cmd_self =
	    app.add_subcommand("selftest", "run the embedded property suite");
	add_common(cmd_self, c_self);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		if (e.get_name() == "CallForHelp" ||
		    e.get_name() == "CallForAllHelp") {
			app.exit(e);
			return 0;
		}
		std::cerr << "usage error: " << e.what() << "\n";
		return 2;
	}

	try {
		if (cmd_bracket->parsed()) {
			qzk_series *s = nullptr;
			qzk_status st = qzk_bracket(bracket_idx.data(),
			                            bracket_idx.size(),
			                            default_order(c_bracket), &s);
			if (st != QZK_OK)
				return fail(st);
			return emit_series(s, c_bracket);
		}
		if (cmd_bibracket->parsed()) {
			auto s = parse_index_list(bib_s), r = parse_index_list(bib_r);
			if (s.size() != r.size()) {
				std::cerr << "usage error: --s and --r need equal "
				             "lengths\n";
				return 2;
			}
			qzk_series *out = nullptr;
			qzk_status st =
			    qzk_bibracket(s.data(), r.data(), s.size(),
			                  default_order(c_bibracket), &out);
			if (st != QZK_OK)
				return fail(st);
			return emit_series(out, c_bibracket);
		}
		if (cmd_zvalue->parsed()) {
			qzk_series *s = nullptr;
			qzk_status st = qzk_zvalue(z_idx.data(), z_idx.size(),
			                           default_order(c_zvalue), &s);
			if (st != QZK_OK)
				return fail(st);
			return emit_series(s, c_zvalue);
		}
		if (cmd_eis->parsed()) {
			qzk_series *s = nullptr;
			qzk_status st =
			    qzk_eisenstein(eis_weight, default_order(c_eis), &s);
			if (st != QZK_OK)
				return fail(st);
			return emit_series(s, c_eis);
		}
		if (cmd_expand->parsed()) {
			qzk_options o = make_options(c_expand);
			o.with_ab = expand_with_ab ? 1 : 0;
			qzk_elem *e = nullptr;
			qzk_status st = qzk_trace_build(expand_trace.c_str(), &o, &e);
			if (st != QZK_OK)
				return fail(st);
			if (expand_y0) {
				qzk_elem *reduced = nullptr;
				st = qzk_elem_y0(e, &reduced);
				qzk_elem_free(e);
				if (st != QZK_OK)
					return fail(st);
				e = reduced;
			}
			char *text = nullptr;
			st = expand_coeff.empty()
			         ? qzk_elem_json(e, &text)
			         : qzk_elem_coeff_json(e, expand_coeff.c_str(), &text);
			qzk_elem_free(e);
			if (st != QZK_OK)
				return fail(st);
			std::cout << take(text) << "\n";
			return 0;
		}
		if (cmd_reduce->parsed()) {
			std::string spec;
			if (reduce_file == "-") {
				std::ostringstream ss;
				ss << std::cin.rdbuf();
				spec = ss.str();
			} else {
				std::ifstream in(reduce_file);
				if (!in) {
					std::cerr << "usage error: cannot read "
					          << reduce_file << "\n";
					return 2;
				}
				std::ostringstream ss;
				ss << in.rdbuf();
				spec = ss.str();
			}
			qzk_options o = make_options(c_reduce);
			char *report = nullptr;
			qzk_status st =
			    qzk_reduce(spec.c_str(), reduce_order, &o, &report);
			if (st != QZK_OK) {
				qzk_string_free(report);
				return fail(st);
			}
			std::cout << take(report) << "\n";
			return 0;
		}
		if (cmd_verify->parsed()) {
			qzk_options o = make_options(c_verify);
			struct Run {
				std::string theorem;
				std::string report;
				int passed = 0;
				qzk_status st = QZK_OK;
			};
			std::vector<Run> runs(verify_theorems.size());
			auto work = [&](size_t i) {
				runs[i].theorem = verify_theorems[i];
				char *rep = nullptr;
				runs[i].st = qzk_verify(verify_theorems[i].c_str(),
				                        &o, &rep, &runs[i].passed);
				runs[i].report = take(rep);
			};
			if (c_verify.parallel && runs.size() > 1) {
				std::vector<std::thread> threads;
				for (size_t i = 0; i < runs.size(); ++i)
					threads.emplace_back(work, i);
				for (auto &t : threads)
					t.join();
			} else {
				for (size_t i = 0; i < runs.size(); ++i)
					work(i);
			}
			bool all = true;
			for (const auto &run : runs) {
				if (run.st != QZK_OK)
					return fail(run.st);
				all = all && run.passed;
				if (c_verify.format == "text") {
					auto j = nlohmann::json::parse(run.report);
					std::cout << (run.passed ? "PASS " : "FAIL ")
					          << run.theorem << " ("
					          << j["items"].size() << " checks, order "
					          << j["order"].get<int>() << ")\n";
					for (const auto &it : j["items"])
						std::cout
						    << "  "
						    << (it["ok"].get<bool>() ? "ok  "
						                             : "FAIL")
						    << " " << it["monomial"].get<std::string>()
						    << " weight " << it["weight"].get<int>()
						    << "\n";
				} else {
					std::cout << run.report << "\n";
				}
			}
			return all ? 0 : 1;
		}
		if (cmd_rel->parsed()) {
			char *report = nullptr;
			qzk_status st =
			    qzk_relations(rel_family.c_str(), rel_weight,
			                  c_rel.order, &report);
			if (st != QZK_OK)
				return fail(st);
			std::cout << take(report) << "\n";
			return 0;
		}
		if (cmd_self->parsed()) {
			char *report = nullptr;
			int passed = 0;
			qzk_status st = qzk_selftest(&report, &passed);
			if (st != QZK_OK) {
				qzk_string_free(report);
				return fail(st);
			}
			std::string text = take(report);
			if (c_self.format == "text") {
				auto j = nlohmann::json::parse(text);
				for (const auto &chk : j["checks"])
					std::cout << (chk["ok"].get<bool>() ? "ok  "
					                                    : "FAIL")
					          << " "
					          << chk["name"].get<std::string>()
					          << "\n";
				std::cout << (passed ? "PASS" : "FAIL") << "\n";
			} else {
				std::cout << text << "\n";
			}
			return passed ? 0 : 1;
		}
	} catch (const std::exception &e) {
		std::cerr << "error: " << e.what() << "\n";
		return 1;
	}
	return 2;
}
