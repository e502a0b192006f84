#include "wild/field.hpp"

namespace wild {

TorusField sample_field(const FieldSampler& f, int nx, int ny, double time) {
    if (!f) throw std::invalid_argument("sample_field: empty sampler");
    TorusField out(nx, ny, time);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) out.at(i, j) = f(out.x1(i), out.x2(j));
    out.validate();
    return out;
}

}  // namespace wild
