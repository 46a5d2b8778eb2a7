#include "cat0lab/types.hpp"

namespace cat0lab {

std::string_view to_string(ModelSpace model) {
    switch (model) {
        case ModelSpace::E2: return "E2";
        case ModelSpace::H2: return "H2";
        case ModelSpace::T4: return "T4";
        case ModelSpace::H2xR: return "H2xR";
    }
    return "?";
}

ModelSpace parse_model(std::string_view name) {
    if (name == "E2") return ModelSpace::E2;
    if (name == "H2") return ModelSpace::H2;
    if (name == "T4") return ModelSpace::T4;
    if (name == "H2xR") return ModelSpace::H2xR;
    throw ValidationError("unknown model '" + std::string(name) + "' (expected E2, H2, T4 or H2xR)");
}

Point default_basepoint(ModelSpace model) {
    switch (model) {
        case ModelSpace::E2: return E2Point{0, 0};
        case ModelSpace::H2: return H2Point{0, 1};
        case ModelSpace::T4: return T4Point{};
        case ModelSpace::H2xR: return H2xRPoint{{0, 1}, 0};
    }
    throw UsageError("default_basepoint: bad model");
}

Isometry identity_isometry(ModelSpace model) {
    switch (model) {
        case ModelSpace::E2: return E2Isometry{};
        case ModelSpace::H2: return H2Isometry{};
        case ModelSpace::T4: return T4Isometry{};
        case ModelSpace::H2xR: return H2xRIsometry{};
    }
    throw UsageError("identity_isometry: bad model");
}

}  // namespace cat0lab
