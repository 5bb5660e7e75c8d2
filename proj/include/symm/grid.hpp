#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace symm {

// A nonnegative function sampled on a uniform Cartesian grid, restricted to a
// masked 2-D domain. Cell (i, j) has center (x0 + (i+0.5)dx, y0 + (j+0.5)dx);
// values on unmasked cells are ignored (treated as the zero extension).
// Immutable value data once built; every operation on it is a pure function.
struct ScalarField {
    int nx = 0, ny = 0;
    double dx = 0.0;
    double x0 = 0.0, y0 = 0.0;
    std::vector<std::uint8_t> mask;   // row-major, j*nx + i
    std::vector<double> values;       // same layout, 0 outside the mask

    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
    bool inside(int i, int j) const {
        return i >= 0 && i < nx && j >= 0 && j < ny && mask[index(i, j)];
    }
    double at(int i, int j) const { return inside(i, j) ? values[index(i, j)] : 0.0; }
    double cx(int i) const { return x0 + (i + 0.5) * dx; }
    double cy(int j) const { return y0 + (j + 0.5) * dx; }

    std::size_t cell_count() const;          // masked cells
    double measure() const;                  // cell_count * dx^2
    double max_value() const;                // over the mask
    double min_value() const;
    double integral(const std::function<double(double)>& g) const; // sum g(v) dx^2
    double lp_norm(double p) const;
    int connected_components() const;

    // Throws std::invalid_argument when an invariant is broken
    // (empty mask, dx <= 0, size mismatch).
    void validate() const;

    // Isoperimetric-style shape test: fraction of cells in the symmetric
    // difference between the mask and the equal-area disk at the mask centroid.
    double disk_deficit() const;
    bool is_disk(double tol = 0.02) const { return disk_deficit() <= tol; }
};

// Mask fixtures used across the test and verification suites. All are centered
// in their bounding boxes and produced at the requested grid spacing.
ScalarField make_disk(double radius, double dx);
ScalarField make_disk_area(double area, double dx);
ScalarField make_square_area(double area, double dx);
ScalarField make_rectangle_area(double area, double aspect, double dx);
ScalarField make_lshape_area(double area, double dx);
ScalarField make_annulus(double r_inner, double r_outer, double dx);

// Fill a mask's values from a function of the cell center.
void fill(ScalarField& f, const std::function<double(double, double)>& fn);

// JSON format: {dx, nx, ny, mask: [...0/1...], values: [...]}, row-major.
ScalarField field_from_json(const std::string& text);
std::string field_to_json(const ScalarField& f);
ScalarField load_field_json(const std::string& path);
void save_field_json(const ScalarField& f, const std::string& path);

// PGM-style ASCII mask (P1 bitmap) plus a CSV of values for the masked cells
// in row-major order.
ScalarField load_field_pgm_csv(const std::string& pgm_path, const std::string& csv_path,
                               double dx);

void save_field_csv(const ScalarField& f, const std::string& path);

} // namespace symm
