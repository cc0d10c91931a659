#include "bilem/field_csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bilem/stencils.hpp"

namespace bilem {

namespace {

const char* kind_name(SourceKind k) {
    switch (k) {
        case SourceKind::Power: return "power";
        case SourceKind::NegativePower: return "negative";
        case SourceKind::Navier: return "navier";
    }
    return "power";
}

SourceKind kind_from(const std::string& s) {
    if (s == "power") return SourceKind::Power;
    if (s == "negative") return SourceKind::NegativePower;
    if (s == "navier") return SourceKind::Navier;
    throw std::invalid_argument("field csv: unknown kind '" + s + "'");
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_field_csv(std::ostream& os, const RadialField& field) {
    field.validate();
    os << "# bilem-field n=" << field.params.n << " p=" << fmt(field.params.p)
       << " kind=" << kind_name(field.kind);
    if (field.kind == SourceKind::Navier) os << " lambda=" << fmt(field.navierLambda);
    os << " smooth=" << (field.smoothOrigin ? 1 : 0);
    // running-integral values at the first tabulated radius, so a reader
    // can rebuild intA/intB exactly instead of guessing the leading mass
    if (!field.intA.empty())
        os << " intA0=" << fmt(field.intA.front()) << " intB0=" << fmt(field.intB.front());
    os << "\n";
    os << "r,u,du,v,dv\n";
    for (std::size_t i = 0; i < field.size(); ++i)
        os << fmt(field.r[i]) << ',' << fmt(field.u[i]) << ',' << fmt(field.du[i]) << ','
           << fmt(field.v[i]) << ',' << fmt(field.dv[i]) << "\n";
}

void write_field_csv(const std::string& path, const RadialField& field) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_field_csv(os, field);
}

RadialField read_field_csv(std::istream& is, const FieldCsvOverrides& over) {
    RadialField f;
    f.params = ProblemParams{over.n > 0 ? over.n : 0, over.p > 0.0 ? over.p : 0.0};
    bool haveN = over.n > 0, haveP = over.p > 0.0;
    double intA0 = 0.0, intB0 = 0.0;
    bool haveOffsets = false;

    std::string line;
    bool headerSeen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        if (line.front() == '#') {
            std::istringstream meta(line.substr(1));
            std::string tok;
            while (meta >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                if (key == "n" && !haveN) {
                    f.params.n = std::stoi(val);
                    haveN = true;
                } else if (key == "p" && !haveP) {
                    f.params.p = std::stod(val);
                    haveP = true;
                } else if (key == "kind") {
                    f.kind = kind_from(val);
                } else if (key == "lambda") {
                    f.navierLambda = std::stod(val);
                } else if (key == "smooth") {
                    f.smoothOrigin = val != "0";
                } else if (key == "intA0") {
                    intA0 = std::stod(val);
                    haveOffsets = true;
                } else if (key == "intB0") {
                    intB0 = std::stod(val);
                }
            }
            continue;
        }
        if (!headerSeen && line.find("r,") == 0) {
            headerSeen = true;
            continue;
        }
        std::istringstream row(line);
        double vals[5];
        char comma;
        for (int c = 0; c < 5; ++c) {
            if (!(row >> vals[c])) throw std::invalid_argument("field csv: malformed row: " + line);
            if (c < 4 && !(row >> comma)) throw std::invalid_argument("field csv: expected comma");
        }
        f.r.push_back(vals[0]);
        f.u.push_back(vals[1]);
        f.du.push_back(vals[2]);
        f.v.push_back(vals[3]);
        f.dv.push_back(vals[4]);
    }
    if (!haveN || !haveP)
        throw std::invalid_argument("field csv: missing problem parameters (metadata or flags)");
    if (f.r.size() < 5) throw std::invalid_argument("field csv: too few rows");

    // Rebuild the running integrals from the tabulated columns.
    const std::size_t m = f.r.size();
    std::vector<double> gA(m), gB(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double w = std::pow(f.r[i], f.params.n - 1.0);
        gA[i] = f.v[i] * f.v[i] * w;
        gB[i] = f.potential_base(f.u[i]) * w;
    }
    f.intA = cumulative_integral(f.r, gA);
    f.intB = cumulative_integral(f.r, gB);
    if (!haveOffsets && f.smoothOrigin) {
        // foreign file: approximate the mass below the first radius
        intA0 = gA.front() / std::max(1.0, static_cast<double>(f.params.n)) * f.r.front();
        intB0 = gB.front() / std::max(1.0, static_cast<double>(f.params.n)) * f.r.front();
    }
    for (std::size_t i = 0; i < m; ++i) {
        f.intA[i] += intA0;
        f.intB[i] += intB0;
    }

    f.rTrust = f.r.front();
    // Rebuilt integrals are third-order in the tabulated density; derive
    // the quadrature accuracy from the grid instead of guessing it.
    std::vector<double> relSpacing(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i)
        relSpacing[i] = (f.r[i + 1] - f.r[i]) / f.r[i + 1];
    std::nth_element(relSpacing.begin(), relSpacing.begin() + relSpacing.size() / 2,
                     relSpacing.end());
    const double med = relSpacing[relSpacing.size() / 2];
    f.quadRelTol = std::clamp(med * med * med, 1e-12, 1e-4);
    f.quadAbsTol = 1e-12;
    f.validate();
    f.sampler = std::make_shared<PchipFieldSampler>(f);
    return f;
}

RadialField read_field_csv(const std::string& path, const FieldCsvOverrides& over) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open '" + path + "'");
    return read_field_csv(is, over);
}

}  // namespace bilem
