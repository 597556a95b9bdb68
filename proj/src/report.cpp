#include "lgring/report.hpp"

#include <sstream>

namespace lgring {

bool Report::certificate_failed() const {
    for (const auto& c : checks)
        if (c.name == "isolated_certificate" && c.verdict == "fail") return true;
    return false;
}

bool Report::any_check_failed() const {
    for (const auto& c : checks)
        if (c.verdict == "fail") return true;
    return false;
}

int Report::exit_code() const {
    if (certificate_failed()) return 3;
    if (any_check_failed()) return 4;
    return 0;
}

OrderedJson report_to_json(const Report& r) {
    OrderedJson j = report_body_json(r);
    OrderedJson t = OrderedJson::object();
    for (const auto& [k, v] : r.timings_ms) t[k] = v;
    j["timings_ms"] = std::move(t);
    return j;
}

OrderedJson report_body_json(const Report& r) {
    OrderedJson j = OrderedJson::object();
    j["version"] = r.version;
    j["input"] = OrderedJson::object();
    j["input"]["poly"] = r.poly;
    j["input"]["n"] = r.n;
    j["certificates"] = r.certificates;
    j["tables"] = r.tables;
    j["frobenius"] = r.frobenius;
    OrderedJson checks = OrderedJson::array();
    for (const auto& c : r.checks) {
        OrderedJson e = OrderedJson::object();
        e["name"] = c.name;
        e["verdict"] = c.verdict;
        e["witness"] = c.witness;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    for (auto it = r.extra.begin(); it != r.extra.end(); ++it) j[it.key()] = it.value();
    return j;
}

Report report_from_json(const OrderedJson& j) {
    Report r;
    r.version = j.at("version").get<std::string>();
    r.poly = j.at("input").at("poly").get<std::string>();
    r.n = j.at("input").at("n").get<int>();
    r.certificates = j.value("certificates", OrderedJson::object());
    r.tables = j.value("tables", OrderedJson::object());
    r.frobenius = j.value("frobenius", OrderedJson::object());
    for (const auto& e : j.value("checks", OrderedJson::array())) {
        CheckResult c;
        c.name = e.at("name").get<std::string>();
        c.verdict = e.at("verdict").get<std::string>();
        c.witness = e.value("witness", OrderedJson());
        r.checks.push_back(std::move(c));
    }
    if (j.contains("timings_ms"))
        for (auto it = j["timings_ms"].begin(); it != j["timings_ms"].end(); ++it)
            r.timings_ms[it.key()] = it.value().get<double>();
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k != "version" && k != "input" && k != "certificates" && k != "tables" &&
            k != "frobenius" && k != "checks" && k != "timings_ms")
            r.extra[k] = it.value();
    }
    return r;
}

namespace {

// Flatten one labeled-dimension table into CSV rows.
void table_csv(const OrderedJson& tables, const std::string& key,
               const std::string& header, const std::vector<std::string>& index_names,
               std::map<std::string, std::string>& out) {
    if (!tables.contains(key)) return;
    const OrderedJson& t = tables[key];
    if (!t.contains("entries")) return;
    std::ostringstream s;
    s << header << "\n";
    for (const auto& e : t["entries"]) {
        const auto& idx = e["index"];
        for (size_t i = 0; i < index_names.size(); ++i) s << idx[i].get<long>() << ",";
        s << e["dim"].get<long>();
        if (e.contains("label")) s << "," << e["label"].get<std::string>();
        s << "\n";
    }
    out[key] = s.str();
}

}  // namespace

std::map<std::string, std::string> report_to_csv(const Report& r) {
    std::map<std::string, std::string> out;
    const OrderedJson& t = r.tables;

    if (t.contains("hilbert")) {
        std::ostringstream s;
        s << "m,dim\n";
        for (const auto& e : t["hilbert"]) s << e[0].get<long>() << "," << e[1].get<long>() << "\n";
        out["hilbert"] = s.str();
    }
    if (t.contains("primitive_dims")) {
        std::ostringstream s;
        s << "k,dim\n";
        long k = 0;
        for (const auto& e : t["primitive_dims"]) s << k++ << "," << e.get<long>() << "\n";
        out["primitive_dims"] = s.str();
    }
    table_csv(t, "hypersurface_betti", "r,dim,label", {"r"}, out);
    table_csv(t, "pv", "r,dim,label", {"r"}, out);
    table_csv(t, "e2", "r,s,dim,label", {"r", "s"}, out);
    table_csv(t, "bott", "s,d,dim,label", {"s", "d"}, out);
    if (t.contains("koszul_antidiagonal")) {
        std::ostringstream s;
        s << "k_top,s,slot_dim,h_dim\n";
        for (const auto& cx : t["koszul_antidiagonal"]) {
            long k_top = cx["k_top"].get<long>();
            const auto& slots = cx["slot_dims"];
            const auto& h = cx["cohomology"];
            for (size_t i = 0; i < slots.size(); ++i)
                s << k_top << "," << i << "," << slots[i].get<long>() << ","
                  << h[i].get<long>() << "\n";
        }
        out["koszul_antidiagonal"] = s.str();
    }
    std::ostringstream s;
    s << "name,verdict\n";
    for (const auto& c : r.checks) s << c.name << "," << c.verdict << "\n";
    out["checks"] = s.str();
    return out;
}

std::string report_to_pretty(const Report& r) {
    std::ostringstream s;
    s << "lgring " << r.version << "\n";
    s << "input: " << r.poly << "  (n = " << r.n << ")\n";
    if (r.certificates.contains("isolated")) {
        const auto& c = r.certificates["isolated"];
        s << "isolated singularity: " << (c["ok"].get<bool>() ? "yes" : "NO") << "\n";
    }
    if (r.certificates.contains("milnor_number"))
        s << "milnor number: " << r.certificates["milnor_number"].get<std::string>() << "\n";
    const auto& t = r.tables;
    if (t.contains("primitive_dims")) {
        s << "dim R(f)_{kn}, k = 0..n-2:";
        for (const auto& e : t["primitive_dims"]) s << " " << e.get<long>();
        s << "\n";
    }
    if (t.contains("rw0_dim")) s << "dim R(W)_0 = " << t["rw0_dim"].get<long>() << "\n";
    auto print_labeled = [&s](const OrderedJson& tab, const std::string& title) {
        s << title << ":\n";
        for (const auto& e : tab["entries"]) {
            s << "  (";
            const auto& idx = e["index"];
            for (size_t i = 0; i < idx.size(); ++i) s << (i ? ", " : "") << idx[i].get<long>();
            s << "): dim " << e["dim"].get<long>();
            if (e.contains("label")) {
                std::string lbl = e["label"].get<std::string>();
                if (lbl != "0") s << "  [" << lbl << "]";
            }
            s << "\n";
        }
    };
    if (t.contains("hypersurface_betti")) print_labeled(t["hypersurface_betti"], "H^r(V)");
    if (t.contains("pv")) print_labeled(t["pv"], "H^r(PV)");
    if (t.contains("e2")) {
        s << "E2 page (nonzero entries):\n";
        for (const auto& e : t["e2"]["entries"]) {
            if (e["dim"].get<long>() == 0) continue;
            s << "  (" << e["index"][0].get<long>() << ", " << e["index"][1].get<long>()
              << "): dim " << e["dim"].get<long>() << "  [" << e["label"].get<std::string>()
              << "]\n";
        }
    }
    if (t.contains("koszul_antidiagonal")) {
        s << "Koszul anti-diagonal complexes:\n";
        for (const auto& cx : t["koszul_antidiagonal"]) {
            s << "  k_top = " << cx["k_top"].get<long>() << ": slots";
            for (const auto& d : cx["slot_dims"]) s << " " << d.get<long>();
            s << " | H^s";
            for (const auto& d : cx["cohomology"]) s << " " << d.get<long>();
            s << "\n";
        }
    }
    if (!r.frobenius.empty()) {
        s << "Frobenius model:";
        if (r.frobenius.contains("dim")) s << " dim " << r.frobenius["dim"].get<long>();
        if (r.frobenius.contains("gram_rank"))
            s << ", gram rank " << r.frobenius["gram_rank"].get<long>();
        s << "\n";
        if (r.frobenius.contains("comparison")) {
            const auto& c = r.frobenius["comparison"];
            if (c["requires_quadratic_extension"].get<bool>())
                s << "comparison: requires quadratic extension, discriminant "
                  << c["discriminant"].get<std::string>() << "\n";
            else
                s << "comparison: c_phi = " << c["c_phi"].get<std::string>() << "\n";
        }
    }
    s << "checks:\n";
    for (const auto& c : r.checks) s << "  [" << c.verdict << "] " << c.name << "\n";
    return s.str();
}

}  // namespace lgring
