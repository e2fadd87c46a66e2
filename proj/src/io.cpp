#include "gdrb/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gdrb/error.hpp"

namespace gdrb::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& where)
{
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k)
                ok = true;
        if (!ok)
            throw ValidationError("config: unknown key \"" + key + "\" in " + where);
    }
}

Eigen::VectorXd vector_from_json(const json& j, const std::string& where)
{
    if (!j.is_array())
        throw ValidationError("config: " + where + " must be an array of reals");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v(Eigen::Index(i)) = j[i].get<double>();
    return v;
}

} // namespace

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

nlohmann::ordered_json superop_to_json(const SuperOp& c)
{
    ordered_json j;
    j["dim"] = c.dim;
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < c.mat.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index k = 0; k < c.mat.cols(); ++k)
            row.push_back(c.mat(i, k));
        rows.push_back(std::move(row));
    }
    j["mat"] = std::move(rows);
    return j;
}

SuperOp superop_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("dim") || !j.contains("mat"))
        throw ValidationError("superop: expected {\"dim\", \"mat\"}");
    reject_unknown_keys(j, { "dim", "mat" }, "superop");
    const int d = j["dim"].get<int>();
    const auto& rows = j["mat"];
    const Eigen::Index n = Eigen::Index(d) * d;
    if (!rows.is_array() || Eigen::Index(rows.size()) != n)
        throw ValidationError("superop: mat must have d^2 rows");
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = rows[std::size_t(i)];
        if (!row.is_array() || Eigen::Index(row.size()) != n)
            throw ValidationError("superop: mat rows must have d^2 entries");
        for (Eigen::Index k = 0; k < n; ++k)
            m(i, k) = row[std::size_t(k)].get<double>();
    }
    return SuperOp(d, std::move(m));
}

namespace {

NoiseSpec parse_noise(const json& j)
{
    reject_unknown_keys(j, { "model", "r", "nu", "theta", "partition", "seed", "side", "E" },
                        "noise");
    NoiseSpec spec;
    const std::string model = j.value("model", "random_unitary");
    if (model == "random_unitary")
        spec.model = NoiseModel::RandomUnitary;
    else if (model == "depol_z")
        spec.model = NoiseModel::DepolZ;
    else if (model == "gate_independent")
        spec.model = NoiseModel::GateIndependent;
    else
        throw ValidationError("config: unknown noise model \"" + model + "\"");
    spec.r = j.value("r", spec.r);
    spec.nu = j.value("nu", spec.nu);
    spec.theta = j.value("theta", spec.theta);
    if (j.contains("partition"))
        spec.partition = j["partition"].get<std::vector<int>>();
    spec.seed = j.value("seed", spec.seed);
    if (j.contains("side")) {
        const std::string side = j["side"].get<std::string>();
        if (side == "left")
            spec.side = NoiseSide::Left;
        else if (side == "right")
            spec.side = NoiseSide::Right;
        else
            throw ValidationError("config: noise side must be \"left\" or \"right\"");
    }
    if (j.contains("E"))
        spec.e = superop_from_json(j["E"]);
    return spec;
}

} // namespace

ExperimentSpec parse_config(const json& j)
{
    reject_unknown_keys(j, { "group", "noise", "m_list", "n_seq", "seed", "spam", "fit" },
                        "config");
    ExperimentSpec spec;
    const std::string group = j.value("group", "t_pauli");
    if (group == "t_pauli")
        spec.group = GroupKind::TPauli;
    else if (group == "clifford")
        spec.group = GroupKind::Clifford;
    else
        throw ValidationError("config: group must be \"t_pauli\" or \"clifford\"");
    if (j.contains("noise"))
        spec.noise = parse_noise(j["noise"]);
    if (j.contains("m_list")) {
        spec.m_list = j["m_list"].get<std::vector<int>>();
        for (const int m : spec.m_list)
            if (m < 1)
                throw ValidationError("config: m_list entries must be >= 1");
    }
    spec.n_seq = j.value("n_seq", spec.n_seq);
    if (spec.n_seq < 2)
        throw ValidationError("config: n_seq must be >= 2");
    spec.seed = j.value("seed", spec.seed);
    if (j.contains("spam")) {
        const auto& spam = j["spam"];
        reject_unknown_keys(spam, { "rho", "obs" }, "spam");
        if (spam.contains("rho") && spam["rho"].is_array()) {
            spec.rho.dim = 2;
            spec.rho.v = vector_from_json(spam["rho"], "spam.rho");
        }
        if (spam.contains("obs") && spam["obs"].is_array()) {
            spec.obs.dim = 2;
            spec.obs.v = vector_from_json(spam["obs"], "spam.obs");
        }
    }
    if (j.contains("fit")) {
        const auto& fit = j["fit"];
        reject_unknown_keys(fit, { "model", "min_m" }, "fit");
        const std::string model = fit.value("model", "fixed_spam");
        if (model == "fixed_spam")
            spec.fit_model = FitModel::FixedSpam;
        else if (model == "free")
            spec.fit_model = FitModel::Free;
        else
            throw ValidationError("config: fit model must be \"fixed_spam\" or \"free\"");
        spec.min_m = fit.value("min_m", spec.min_m);
    }
    return spec;
}

ExperimentSpec load_config(const std::string& path)
{
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ValidationError("config: " + path + ": " + e.what());
    }
    return parse_config(j);
}

std::string dataset_to_csv(const DecayDataset& ds)
{
    std::ostringstream out;
    out << "m,mean,variance,num_sequences\n";
    for (const DecayRow& r : ds.rows)
        out << r.m << ',' << format_double(r.mean) << ',' << format_double(r.variance) << ','
            << r.num_sequences << '\n';
    return out.str();
}

DecayDataset dataset_from_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "m,mean,variance,num_sequences")
        throw ValidationError("dataset csv: expected header m,mean,variance,num_sequences");
    DecayDataset ds;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        DecayRow row;
        char extra = 0;
        if (std::sscanf(line.c_str(), "%d,%lf,%lf,%d%c", &row.m, &row.mean, &row.variance,
                        &row.num_sequences, &extra)
            != 4)
            throw ValidationError("dataset csv: bad row \"" + line + "\"");
        ds.rows.push_back(row);
    }
    return ds;
}

std::string brute_force_to_csv(const std::vector<std::pair<int, double>>& rows)
{
    std::ostringstream out;
    out << "m,exact_mean\n";
    for (const auto& [m, value] : rows)
        out << m << ',' << format_double(value) << '\n';
    return out.str();
}

std::string theory_to_csv(const TheoryCurve& curve)
{
    std::ostringstream out;
    out << "m,prediction,bound\n";
    for (const TheoryCurveRow& r : curve.rows)
        out << r.m << ',' << format_double(r.value) << ',' << format_double(r.bound) << '\n';
    return out.str();
}

nlohmann::ordered_json fit_to_json(const FitResult& fit)
{
    ordered_json j;
    j["version"] = "0.1.0";
    j["model"] = fit.model;
    j["p_est"] = fit.p_est;
    j["A_est"] = fit.A_est;
    j["B_est"] = fit.B_est;
    j["weighted_sse"] = fit.weighted_sse;
    j["iterations"] = fit.iterations;
    j["flat_likelihood"] = fit.flat_likelihood;
    return j;
}

FitResult fit_from_json(const json& j)
{
    FitResult fit;
    fit.model = j.at("model").get<std::string>();
    fit.p_est = j.at("p_est").get<double>();
    fit.A_est = j.at("A_est").get<double>();
    fit.B_est = j.at("B_est").get<double>();
    fit.weighted_sse = j.at("weighted_sse").get<double>();
    fit.iterations = j.at("iterations").get<int>();
    fit.flat_likelihood = j.value("flat_likelihood", false);
    return fit;
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    out << text;
    if (!out)
        throw IoError("write failed: " + path);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace gdrb::io
