#include "qsl/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

#include "json.hpp"

namespace qsl::io {

using nlohmann::json;

namespace {

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& rows, int dim, const std::string& path) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
        throw ParseError(path + ": matrix must have " + std::to_string(dim) + " rows");
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const json& row = rows[r];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw ParseError(path + ": row " + std::to_string(r) + " must have " +
                             std::to_string(dim) + " entries");
        for (int c = 0; c < dim; ++c) {
            const json& entry = row[c];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number())
                throw ParseError(path + ": entry (" + std::to_string(r) + "," +
                                 std::to_string(c) + ") must be a [re, im] pair");
            m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return m;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

json optional_json(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

} // namespace

MatrixFile read_matrix_file(const std::string& path) {
    json j = parse_file(path);
    if (!j.is_object() || !j.contains("dim") || !j.contains("kind") || !j.contains("matrix"))
        throw ParseError(path + ": expected object with dim, kind, matrix");
    MatrixFile mf;
    if (!j["dim"].is_number_integer() || j["dim"].get<int>() <= 0)
        throw ParseError(path + ": dim must be a positive integer");
    mf.dim = j["dim"].get<int>();
    mf.kind = j["kind"].get<std::string>();
    if (mf.kind != "density" && mf.kind != "hermitian")
        throw ParseError(path + ": kind must be \"density\" or \"hermitian\"");
    mf.matrix = matrix_from_json(j["matrix"], mf.dim, path);
    return mf;
}

void write_matrix_file(const std::string& path, const MatrixFile& mf) {
    json j;
    j["dim"] = mf.dim;
    j["kind"] = mf.kind;
    j["matrix"] = matrix_to_json(mf.matrix);
    write_text_file(path, j.dump(2) + "\n");
}

DensityOperator load_density(const std::string& path, double tol) {
    MatrixFile mf = read_matrix_file(path);
    if (mf.kind != "density")
        throw ParseError(path + ": expected kind \"density\", got \"" + mf.kind + "\"");
    return DensityOperator::validate(mf.matrix, tol);
}

Matrix load_hermitian(const std::string& path, double tol) {
    MatrixFile mf = read_matrix_file(path);
    if (mf.kind != "hermitian")
        throw ParseError(path + ": expected kind \"hermitian\", got \"" + mf.kind + "\"");
    return hermitize(mf.matrix, tol);
}

HamiltonianSchedule load_schedule(const std::string& path) {
    json j = parse_file(path);
    if (!j.is_object() || !j.contains("type"))
        throw ParseError(path + ": expected object with a type field");
    std::filesystem::path base = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp.string() : (base / fp).string();
    };

    std::string type = j["type"].get<std::string>();
    if (type == "constant") {
        if (!j.contains("hamiltonian"))
            throw ParseError(path + ": constant schedule needs a hamiltonian path");
        Matrix h = load_hermitian(resolve(j["hamiltonian"].get<std::string>()));
        return HamiltonianSchedule::constant(h);
    }
    if (type == "piecewise") {
        if (!j.contains("knots") || !j["knots"].is_array() || j["knots"].empty())
            throw ParseError(path + ": piecewise schedule needs a non-empty knots array");
        std::map<double, Matrix> knots;
        for (const json& knot : j["knots"]) {
            if (!knot.is_array() || knot.size() != 2)
                throw ParseError(path + ": each knot must be [t, path]");
            knots[knot[0].get<double>()] = load_hermitian(resolve(knot[1].get<std::string>()));
        }
        auto table = std::make_shared<std::map<double, Matrix>>(std::move(knots));
        HamiltonianSchedule schedule;
        schedule.descriptor = "piecewise";
        // Each knot value holds until the next knot time.
        schedule.at = [table](double t) -> Matrix {
            auto it = table->upper_bound(t);
            if (it != table->begin()) --it;
            return it->second;
        };
        return schedule;
    }
    throw ParseError(path + ": unknown schedule type \"" + type + "\"");
}

std::string bound_report_json(const BoundReport& report) {
    json j;
    j["delta_e"] = report.delta_e;
    j["isospectral"] = report.isospectral;
    j["tau_mt"] = optional_json(report.tau_mt);
    j["tau_g"] = optional_json(report.tau_g);
    j["tau_fs"] = optional_json(report.tau_fs);
    j["tau_u"] = optional_json(report.tau_u);
    j["tau_wy"] = {{"value", report.tau_wy.value},
                   {"valid", report.tau_wy.valid},
                   {"reason", report.tau_wy.reason}};
    if (report.tau_p) {
        json p;
        p["lower"] = report.tau_p->lower;
        p["upper"] = std::isfinite(report.tau_p->upper) ? json(report.tau_p->upper)
                                                        : json(nullptr);
        p["exact"] = optional_json(report.tau_p->exact);
        p["upper_converged"] = report.tau_p->upper_converged;
        j["tau_p"] = p;
    } else {
        j["tau_p"] = nullptr;
    }
    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
}

std::string bound_report_csv(const BoundReport& report) {
    auto cell = [](const std::optional<double>& v) {
        return v && std::isfinite(*v) ? fmt(*v) : std::string("nan");
    };
    std::ostringstream os;
    os << "delta_e,isospectral,tau_mt,tau_g,tau_fs,tau_u,tau_wy,tau_wy_valid,"
          "tau_p_lower,tau_p_upper,tau_p_exact\n";
    os << fmt(report.delta_e) << ',' << (report.isospectral ? 1 : 0) << ','
       << cell(report.tau_mt) << ',' << cell(report.tau_g) << ',' << cell(report.tau_fs)
       << ',' << cell(report.tau_u) << ',' << fmt(report.tau_wy.value) << ','
       << (report.tau_wy.valid ? 1 : 0) << ',';
    if (report.tau_p) {
        os << fmt(report.tau_p->lower) << ','
           << (std::isfinite(report.tau_p->upper) ? fmt(report.tau_p->upper) : "nan")
           << ',' << cell(report.tau_p->exact);
    } else {
        os << "nan,nan,nan";
    }
    os << '\n';
    return os.str();
}

std::string trajectory_csv(const Trajectory& traj) {
    if (traj.size() == 0)
        throw EmptyTrajectory("trajectory has no samples");
    const int dim = traj.states.front().dim();
    std::ostringstream os;
    os << "t";
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            os << ",re_" << r << '_' << c << ",im_" << r << '_' << c;
    os << ",delta_e";
    const MetricTag tags[] = {MetricTag::FsPure, MetricTag::GrassmannProduct,
                              MetricTag::Bures, MetricTag::WignerYanase, MetricTag::Gp};
    for (MetricTag tag : tags)
        os << ",speed_" << metric_tag_name(tag);
    os << '\n';

    for (std::size_t k = 0; k < traj.size(); ++k) {
        const Matrix& m = traj.states[k].matrix();
        const Matrix& h = traj.hamiltonians[k];
        os << fmt(traj.times[k]);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                os << ',' << fmt(m(r, c).real()) << ',' << fmt(m(r, c).imag());
        os << ',' << fmt(std::sqrt(variance(h, traj.states[k])));
        for (MetricTag tag : tags) {
            double speed = std::numeric_limits<double>::quiet_NaN();
            try {
                speed = metric_speed(traj.states[k], h, tag);
            } catch (const ValidationError&) {
                // precondition failure (e.g. pure-state speed on a mixed state)
            }
            os << ',' << (std::isfinite(speed) ? fmt(speed) : "nan");
        }
        os << '\n';
    }
    return os.str();
}

std::string trajectory_json(const Trajectory& traj) {
    json samples = json::array();
    for (std::size_t k = 0; k < traj.size(); ++k) {
        json s;
        s["t"] = traj.times[k];
        s["state"] = matrix_to_json(traj.states[k].matrix());
        s["hamiltonian"] = matrix_to_json(traj.hamiltonians[k]);
        samples.push_back(std::move(s));
    }
    json j;
    j["samples"] = samples;
    return j.dump(2) + "\n";
}

std::string gp_result_json(const GpDistanceResult& res, const Trajectory& best_curve) {
    json j;
    j["lower"] = res.lower;
    j["upper"] = res.upper;
    j["converged"] = res.converged;
    j["best_defect"] = res.best_defect;
    j["best_T"] = best_curve.size() ? best_curve.times.back() : 0.0;
    json schedule = json::array();
    for (std::size_t k = 0; k < best_curve.size(); ++k)
        schedule.push_back({{"t", best_curve.times[k]},
                            {"hamiltonian", matrix_to_json(best_curve.hamiltonians[k])}});
    j["schedule"] = schedule;
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot open file for writing: " + path);
    out << content;
}

} // namespace qsl::io
