#include "varpois/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "varpois/complexes.hpp"
#include "varpois/errors.hpp"
#include "varpois/lenard.hpp"
#include "varpois/polydiff.hpp"
#include "varpois/symbols.hpp"

namespace vp {

int Report::exit_code() const {
    int code = 0;
    for (auto& r : results) {
        if (r.status == "error") return 2;
        if (r.status == "fail") code = 1;
    }
    return code;
}

ojson Report::body() const {
    ojson j;
    j["command"] = command;
    ojson in = ojson::object();
    for (auto& [k, v] : inputs) in[k] = v;
    j["inputs"] = in;
    ojson rs = ojson::array();
    for (auto& r : results) {
        ojson o;
        o["name"] = r.name;
        o["status"] = r.status;
        o["value"] = r.value;
        if (r.status == "fail") o["witness"] = r.witness;
        rs.push_back(o);
    }
    j["results"] = rs;
    return j;
}

std::string Report::json(bool timing) const {
    ojson j = body();
    if (timing) j["timing_ms"] = timing_ms;
    return j.dump(2) + "\n";
}

std::string Report::text(bool timing) const {
    std::ostringstream os;
    os << "command: " << command << "\n";
    for (auto& [k, v] : inputs) os << "input " << k << ": " << v << "\n";
    for (auto& r : results) {
        os << r.name << ": " << r.status;
        if (!r.value.is_null()) os << " " << (r.value.is_string() ? r.value.get<std::string>() : r.value.dump());
        os << "\n";
        if (r.status == "fail")
            os << "  witness: " << (r.witness.is_string() ? r.witness.get<std::string>() : r.witness.dump()) << "\n";
    }
    if (timing) os << "time: " << timing_ms << " ms\n";
    return os.str();
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"check-jacobi", "check-compat", "cohomology", "reduce", "lenard",
                                                "echelon",      "det",          "sigma",      "solve-skew"};
    return names;
}

namespace {

ReportResult ok(std::string name, ojson value = nullptr) { return {std::move(name), "ok", std::move(value), nullptr}; }
ReportResult fail(std::string name, ojson value, ojson witness) {
    return {std::move(name), "fail", std::move(value), std::move(witness)};
}

void need(const std::string& v, const std::string& flag) {
    if (v.empty()) throw ParseError("missing " + flag);
}

MatDiffOp op_arg(Report& rep, const std::string& name, const std::string& src, const Session& s) {
    need(src, "--" + name);
    MatDiffOp m = parse_operator(src, s);
    rep.inputs.emplace_back(name, m.str());
    return m;
}

ojson triple_witness(const TripleCheck& t) {
    ojson w;
    w["triple"] = {t.triple[0], t.triple[1], t.triple[2]};
    w["residual"] = t.residual.str();
    return w;
}

void jacobi_results(Report& rep, const std::string& label, const Hamiltonian& h) {
    if (!check_skewadjoint(h)) {
        rep.results.push_back(fail("skewadjoint " + label, false, (h.H + h.H.adjoint()).str()));
        return;
    }
    rep.results.push_back(ok("skewadjoint " + label, true));
    TripleCheck t = check_jacobi(h);
    if (t.ok)
        rep.results.push_back(ok("jacobi " + label, true));
    else
        rep.results.push_back(fail("jacobi " + label, false, triple_witness(t)));
}

unsigned long expected_dim(const MatFieldOp& K, unsigned k) {
    return binomial(static_cast<unsigned long>(std::max(K.order(), 0)) * K.rows(), k + 1);
}

ojson strings(const std::vector<std::string>& v) {
    ojson a = ojson::array();
    for (auto& s : v) a.push_back(s);
    return a;
}

void run_command(Report& rep, const std::string& cmd, const CommandArgs& a, const Session& s) {
    if (cmd == "check-jacobi") {
        Hamiltonian h{op_arg(rep, "H", a.H, s)};
        jacobi_results(rep, "H", h);
    } else if (cmd == "check-compat") {
        Hamiltonian A{op_arg(rep, "A", a.A, s)}, B{op_arg(rep, "B", a.B, s)};
        jacobi_results(rep, "A", A);
        jacobi_results(rep, "B", B);
        if (!check_skewadjoint(A) || !check_skewadjoint(B)) return;
        TripleCheck t = check_compatible(A, B);
        if (t.ok)
            rep.results.push_back(ok("compatible", true));
        else
            rep.results.push_back(fail("compatible", false, triple_witness(t)));
    } else if (cmd == "cohomology") {
        MatFieldOp K = quasiconstant_part(op_arg(rep, "K", a.K, s));
        rep.inputs.emplace_back("k", std::to_string(a.k));
        CohomologyResult r = cohomology_dim(K, a.k, a.degree_bound);
        rep.results.push_back({"dim", r.lower_bound ? "flagged" : "ok", r.dim, nullptr});
        rep.results.push_back(ok("expected", expected_dim(K, a.k)));
        std::vector<std::string> reps;
        for (auto& p : r.representatives) reps.push_back(p.str());
        rep.results.push_back(ok("basis_representatives", strings(reps)));
        rep.results.push_back(ok("flagged_lower_bound", r.lower_bound));
    } else if (cmd == "reduce") {
        MatFieldOp K = quasiconstant_part(op_arg(rep, "K", a.K, s));
        need(a.P, "--P");
        SkewArray P = session_array(s, a.P);
        rep.inputs.emplace_back("P", P.str());
        try {
            ClosedReduction r = reduce_closed(P, K);
            rep.results.push_back(ok("Q", r.Q.str()));
            rep.results.push_back(ok("R", r.R.str()));
            rep.results.push_back(ok("exact", r.R.is_zero()));
        } catch (const NotClosed& e) {
            rep.results.push_back(fail("closed", false, e.what()));
        }
    } else if (cmd == "lenard") {
        Hamiltonian H{op_arg(rep, "H", a.H, s)}, K{op_arg(rep, "K", a.K, s)};
        need(a.seed, "--seed");
        DiffPoly seed = parse_diffpoly(a.seed, s);
        rep.inputs.emplace_back("seed", seed.str());
        rep.inputs.emplace_back("steps", std::to_string(a.steps));
        HierarchyState st;
        try {
            st = run_hierarchy(H, K, {seed}, a.steps);
        } catch (const NotPoisson& e) {
            rep.results.push_back(fail("pair", false, e.what()));
            return;
        }
        for (std::size_t n = 0; n < st.densities.size(); ++n)
            rep.results.push_back(ok("h" + std::to_string(n), st.densities[n].rep.str()));
        for (std::size_t n = 0; n < st.certificates.size(); ++n) {
            auto& c = st.certificates[n];
            ojson v;
            v["recursion"] = c.recursion;
            v["kernel_dim"] = c.kernel_dim ? ojson(*c.kernel_dim) : ojson(nullptr);
            std::string name = "certificate h" + std::to_string(n + 1);
            if (c.recursion)
                rep.results.push_back(ok(name, v));
            else
                rep.results.push_back(fail(name, v, "K dh/du differs from H dh/du of the previous density"));
        }
        InvolutionMatrix m = verify_involution(st);
        ojson mv;
        mv["H"] = m.H;
        mv["K"] = m.K;
        if (m.all()) {
            rep.results.push_back(ok("involution", mv));
        } else {
            ojson pairs = ojson::array();
            for (std::size_t i = 0; i < m.H.size(); ++i)
                for (std::size_t j = i; j < m.H.size(); ++j)
                    if (!m.H[i][j] || !m.K[i][j]) pairs.push_back({i, j});
            rep.results.push_back(fail("involution", mv, pairs));
        }
        if (st.obstruction) {
            ojson w;
            w["kind"] = st.obstruction->kind;
            w["component"] = st.obstruction->component;
            std::vector<std::string> res;
            for (auto& p : st.obstruction->witness) res.push_back(p.str());
            w["residual"] = strings(res);
            w["message"] = st.obstruction->message;
            rep.results.push_back(fail("obstruction", st.densities.size() - 1, w));
        }
    } else if (cmd == "echelon") {
        MatFieldOp M = quasiconstant_part(op_arg(rep, "M", a.M, s));
        Echelon e = row_echelon(M);
        rep.results.push_back(ok("echelon", e.m.str()));
        std::vector<std::string> ops;
        for (auto& o : e.ops) {
            if (o.kind == RowOp::Swap)
                ops.push_back("swap " + std::to_string(o.i + 1) + " " + std::to_string(o.j + 1));
            else
                ops.push_back("row " + std::to_string(o.i + 1) + " -= (" + o.p.str() + ") * row " + std::to_string(o.j + 1));
        }
        rep.results.push_back(ok("ops", strings(ops)));
        if (apply_row_ops(M, e.ops) == e.m)
            rep.results.push_back(ok("replay", true));
        else
            rep.results.push_back(fail("replay", false, apply_row_ops(M, e.ops).str()));
    } else if (cmd == "det") {
        MatFieldOp M = quasiconstant_part(op_arg(rep, "M", a.M, s));
        auto d = dieudonne_det(M);
        ojson v;
        v["c"] = d ? d->c.str() : "0";
        v["degree"] = d ? ojson(d->degree) : ojson(nullptr);
        rep.results.push_back(ok("det", v));
    } else if (cmd == "sigma") {
        MatFieldOp K = quasiconstant_part(op_arg(rep, "K", a.K, s));
        rep.inputs.emplace_back("k", std::to_string(a.k));
        SigmaSpace sg = sigma_space(K, a.k, a.degree_bound);
        rep.results.push_back({"dim", sg.lower_bound ? "flagged" : "ok", sg.basis.size(), nullptr});
        rep.results.push_back(ok("expected", sg.expected));
        std::vector<std::string> b;
        for (auto& p : sg.basis) b.push_back(p.str());
        rep.results.push_back(ok("basis", strings(b)));
    } else if (cmd == "solve-skew") {
        MatFieldOp K = quasiconstant_part(op_arg(rep, "K", a.K, s));
        need(a.S, "--S");
        KDiffOp S = session_kdiff(s, a.S);
        rep.inputs.emplace_back("S", S.str());
        KDiffOp P;
        try {
            P = solve_skew_equation(K, S, a.degree_bound);
        } catch (const NoRationalSolution& e) {
            rep.results.push_back(fail("P", nullptr, e.what()));
            return;
        } catch (const Incomplete& e) {
            rep.results.push_back(fail("P", nullptr, e.what()));
            return;
        }
        KDiffOp lhs = DiffPoly(static_cast<long>(S.arity() + 1)) * total_skewsymmetrize(module_action(K, P));
        if (lhs == S)
            rep.results.push_back(ok("P", P.str()));
        else
            rep.results.push_back(fail("P", P.str(), (lhs - S).str()));
    } else {
        throw UnknownCommand("unknown command '" + cmd + "'");
    }
}

}  // namespace

Report dispatch(const std::string& command, const CommandArgs& args, const Session& session) {
    if (std::find(command_names().begin(), command_names().end(), command) == command_names().end())
        throw UnknownCommand("unknown command '" + command + "'");
    set_display_components(session.ell);
    Report rep;
    rep.command = command;
    auto t0 = std::chrono::steady_clock::now();
    try {
        run_command(rep, command, args, session);
    } catch (const Error& e) {
        rep.results.push_back({"error", "error", e.what(), nullptr});
    }
    rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Variational Poisson cohomology and the Lenard-Magri scheme", "varpois"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text", seed_file, params;
    unsigned vars = 1;
    bool no_timing = false;
    CommandArgs a;
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--degree-bound", a.degree_bound, "degree bound of the rational ansatz");
    app.add_option("--seed-file", seed_file, "session file with vars, params and definitions");
    app.add_option("--vars", vars, "number of components");
    app.add_option("--params", params, "parameter names, comma separated");
    app.add_flag("--no-timing", no_timing, "omit timing from the report");

    auto sub = [&](const std::string& name, const std::string& help) { return app.add_subcommand(name, help); };
    auto* cj = sub("check-jacobi", "check that H is a Poisson structure");
    cj->add_option("--H", a.H)->required();
    auto* cc = sub("check-compat", "check that A and B are compatible");
    cc->add_option("--A", a.A)->required();
    cc->add_option("--B", a.B)->required();
    auto* co = sub("cohomology", "dimension of the variational Poisson cohomology");
    co->add_option("--K", a.K)->required();
    co->add_option("--k", a.k)->required();
    auto* re = sub("reduce", "reduce a closed array to the (0,0) filtration level");
    re->add_option("--K", a.K)->required();
    re->add_option("--P", a.P, "array name in the session")->required();
    auto* le = sub("lenard", "run the Lenard-Magri scheme");
    le->add_option("--H", a.H)->required();
    le->add_option("--K", a.K)->required();
    le->add_option("--seed", a.seed)->required();
    le->add_option("--steps", a.steps);
    auto* ec = sub("echelon", "row echelon form");
    ec->add_option("--M", a.M)->required();
    auto* de = sub("det", "Dieudonne determinant");
    de->add_option("--M", a.M)->required();
    auto* si = sub("sigma", "basis of Sigma_k(K*)");
    si->add_option("--K", a.K)->required();
    si->add_option("--k", a.k)->required();
    auto* ss = sub("solve-skew", "solve (k+1)<K o P>^- = S");
    ss->add_option("--K", a.K)->required();
    ss->add_option("--S", a.S, "array name in the session")->required();

    if (!args.empty() && args[0][0] != '-' &&
        std::find(command_names().begin(), command_names().end(), args[0]) == command_names().end()) {
        Report rep;
        rep.command = args[0];
        rep.results.push_back({"error", "error", "unknown command '" + args[0] + "'", nullptr});
        out << (format == "json" ? rep.json(false) : rep.text(false));
        return 2;
    }
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    std::string command = app.get_subcommands().front()->get_name();
    Session session;
    session.ell = vars;
    Report rep;
    try {
        std::stringstream ps(params);
        std::string p;
        while (std::getline(ps, p, ',')) {
            p.erase(std::remove(p.begin(), p.end(), ' '), p.end());
            if (!p.empty()) session = parse_session("params " + p, session);
        }
        if (!seed_file.empty()) {
            std::ifstream f(seed_file);
            if (!f) throw ParseError("cannot read " + seed_file);
            std::stringstream buf;
            buf << f.rdbuf();
            session = parse_session(buf.str(), session);
        }
        rep = dispatch(command, a, session);
    } catch (const Error& e) {
        rep.command = command;
        rep.results.push_back({"error", "error", e.what(), nullptr});
    }
    out << (format == "json" ? rep.json(!no_timing) : rep.text(!no_timing));
    return rep.exit_code();
}

}  // namespace vp
