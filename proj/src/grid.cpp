#include "symm/grid.hpp"

#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "symm/util.hpp"
#include <json.hpp>

namespace symm {

std::size_t ScalarField::cell_count() const {
    std::size_t n = 0;
    for (auto m : mask) n += m ? 1 : 0;
    return n;
}

double ScalarField::measure() const { return static_cast<double>(cell_count()) * dx * dx; }

double ScalarField::max_value() const {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < mask.size(); ++k)
        if (mask[k]) m = std::max(m, values[k]);
    return m;
}

double ScalarField::min_value() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < mask.size(); ++k)
        if (mask[k]) m = std::min(m, values[k]);
    return m;
}

double ScalarField::integral(const std::function<double(double)>& g) const {
    double s = 0.0;
    for (std::size_t k = 0; k < mask.size(); ++k)
        if (mask[k]) s += g(values[k]);
    return s * dx * dx;
}

double ScalarField::lp_norm(double p) const {
    double s = 0.0;
    for (std::size_t k = 0; k < mask.size(); ++k)
        if (mask[k]) s += std::pow(std::abs(values[k]), p);
    return std::pow(s * dx * dx, 1.0 / p);
}

int ScalarField::connected_components() const {
    std::vector<std::uint8_t> seen(mask.size(), 0);
    int comps = 0;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            std::size_t k = index(i, j);
            if (!mask[k] || seen[k]) continue;
            ++comps;
            std::deque<std::pair<int, int>> queue{{i, j}};
            seen[k] = 1;
            while (!queue.empty()) {
                auto [ci, cj] = queue.front();
                queue.pop_front();
                const int di[4] = {1, -1, 0, 0};
                const int dj[4] = {0, 0, 1, -1};
                for (int d = 0; d < 4; ++d) {
                    int ni = ci + di[d], nj = cj + dj[d];
                    if (ni < 0 || ni >= nx || nj < 0 || nj >= ny) continue;
                    std::size_t nk = index(ni, nj);
                    if (mask[nk] && !seen[nk]) {
                        seen[nk] = 1;
                        queue.emplace_back(ni, nj);
                    }
                }
            }
        }
    }
    return comps;
}

void ScalarField::validate() const {
    if (dx <= 0.0) throw std::invalid_argument("field: dx must be positive");
    if (nx <= 0 || ny <= 0) throw std::invalid_argument("field: grid must be nonempty");
    const std::size_t n = static_cast<std::size_t>(nx) * ny;
    if (mask.size() != n || values.size() != n)
        throw std::invalid_argument("field: mask/values size mismatch");
    if (cell_count() == 0) throw std::invalid_argument("empty domain");
}

double ScalarField::disk_deficit() const {
    const std::size_t cells = cell_count();
    if (cells == 0) throw std::invalid_argument("empty domain");
    double cxs = 0.0, cys = 0.0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (mask[index(i, j)]) { cxs += cx(i); cys += cy(j); }
    cxs /= cells;
    cys /= cells;
    const double radius = std::sqrt(measure() / M_PI);
    std::size_t mismatched = 0;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            double rr = std::hypot(cx(i) - cxs, cy(j) - cys);
            bool in_disk = rr <= radius;
            if (in_disk != (mask[index(i, j)] != 0)) ++mismatched;
        }
    }
    return static_cast<double>(mismatched) / cells;
}

namespace {

ScalarField from_indicator(double width, double height, double dx,
                           const std::function<bool(double, double)>& inside) {
    ScalarField f;
    f.dx = dx;
    f.nx = static_cast<int>(std::ceil(width / dx)) + 2;
    f.ny = static_cast<int>(std::ceil(height / dx)) + 2;
    f.x0 = -0.5 * f.nx * dx;
    f.y0 = -0.5 * f.ny * dx;
    f.mask.assign(static_cast<std::size_t>(f.nx) * f.ny, 0);
    f.values.assign(f.mask.size(), 0.0);
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i)
            if (inside(f.cx(i), f.cy(j))) f.mask[f.index(i, j)] = 1;
    f.validate();
    return f;
}

} // namespace

ScalarField make_disk(double radius, double dx) {
    return from_indicator(2 * radius, 2 * radius, dx, [=](double x, double y) {
        return x * x + y * y < radius * radius;
    });
}

ScalarField make_disk_area(double area, double dx) {
    return make_disk(std::sqrt(area / M_PI), dx);
}

ScalarField make_square_area(double area, double dx) {
    double half = 0.5 * std::sqrt(area);
    return from_indicator(2 * half, 2 * half, dx, [=](double x, double y) {
        return std::abs(x) < half && std::abs(y) < half;
    });
}

ScalarField make_rectangle_area(double area, double aspect, double dx) {
    if (aspect < 1.0) throw std::invalid_argument("aspect must be >= 1");
    double b = std::sqrt(area / aspect); // short side
    double a = aspect * b;
    return from_indicator(a, b, dx, [=](double x, double y) {
        return std::abs(x) < 0.5 * a && std::abs(y) < 0.5 * b;
    });
}

ScalarField make_lshape_area(double area, double dx) {
    // Union of two rectangles forming an L of three unit blocks, scaled to the
    // requested area: the block side is sqrt(area/3).
    double s = std::sqrt(area / 3.0);
    return from_indicator(2 * s, 2 * s, dx, [=](double x, double y) {
        bool in_outer = x > -s && x < s && y > -s && y < s;
        bool in_cut = x > 0.0 && y > 0.0;
        return in_outer && !in_cut;
    });
}

ScalarField make_annulus(double r_inner, double r_outer, double dx) {
    return from_indicator(2 * r_outer, 2 * r_outer, dx, [=](double x, double y) {
        double rr = x * x + y * y;
        return rr < r_outer * r_outer && rr > r_inner * r_inner;
    });
}

void fill(ScalarField& f, const std::function<double(double, double)>& fn) {
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i)
            if (f.mask[f.index(i, j)]) f.values[f.index(i, j)] = fn(f.cx(i), f.cy(j));
}

ScalarField field_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ScalarField f;
    f.dx = j.at("dx").get<double>();
    f.nx = j.at("nx").get<int>();
    f.ny = j.at("ny").get<int>();
    f.x0 = j.value("x0", 0.0);
    f.y0 = j.value("y0", 0.0);
    auto m = j.at("mask").get<std::vector<int>>();
    f.mask.assign(m.begin(), m.end());
    f.values = j.at("values").get<std::vector<double>>();
    f.validate();
    return f;
}

std::string field_to_json(const ScalarField& f) {
    nlohmann::json j;
    j["dx"] = f.dx;
    j["nx"] = f.nx;
    j["ny"] = f.ny;
    j["x0"] = f.x0;
    j["y0"] = f.y0;
    j["mask"] = std::vector<int>(f.mask.begin(), f.mask.end());
    j["values"] = f.values;
    return j.dump();
}

ScalarField load_field_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open field file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return field_from_json(ss.str());
}

void save_field_json(const ScalarField& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << field_to_json(f) << '\n';
}

ScalarField load_field_pgm_csv(const std::string& pgm_path, const std::string& csv_path,
                               double dx) {
    std::ifstream in(pgm_path);
    if (!in) throw std::runtime_error("cannot open mask file: " + pgm_path);
    std::string magic;
    in >> magic;
    if (magic != "P1") throw std::runtime_error("mask must be ASCII P1 bitmap: " + pgm_path);
    // skip comment lines between tokens
    auto next_int = [&in, &pgm_path]() {
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') { std::string rest; std::getline(in, rest); continue; }
            return std::stoi(tok);
        }
        throw std::runtime_error("truncated mask file: " + pgm_path);
    };
    ScalarField f;
    f.dx = dx;
    f.nx = next_int();
    f.ny = next_int();
    f.mask.resize(static_cast<std::size_t>(f.nx) * f.ny);
    for (std::size_t k = 0; k < f.mask.size(); ++k)
        f.mask[k] = static_cast<std::uint8_t>(next_int() != 0);
    f.values.assign(f.mask.size(), 0.0);

    std::ifstream vin(csv_path);
    if (!vin) throw std::runtime_error("cannot open values file: " + csv_path);
    std::size_t k = 0;
    std::string line;
    while (std::getline(vin, line)) {
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            if (cell.empty()) continue;
            while (k < f.mask.size() && !f.mask[k]) ++k;
            if (k >= f.mask.size()) throw std::runtime_error("more values than masked cells");
            f.values[k++] = std::stod(cell);
        }
    }
    f.validate();
    return f;
}

void save_field_csv(const ScalarField& f, const std::string& path) {
    CsvWriter csv(path);
    csv.header({"x", "y", "value"});
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i)
            if (f.mask[f.index(i, j)])
                csv.row({f.cx(i), f.cy(j), f.values[f.index(i, j)]});
}

} // namespace symm
