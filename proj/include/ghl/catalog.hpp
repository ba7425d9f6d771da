#pragma once

// Curated models of classifying spaces with polynomial cohomology: the
// generator degrees of H^*(BG), the dimension of G, and the
// characteristics in which polynomiality is classical.  User catalogs
// use the same one-record-per-line text format and must pass the same
// consistency checks.

#include <string>
#include <vector>

#include "ghl/algebra.hpp"
#include "ghl/field.hpp"

namespace ghl {

struct catalog_error : error {
    using error::error;
};

struct CharPolicy {
    enum class Kind { All, ZeroOnly, Exclude };
    Kind kind = Kind::All;
    std::vector<unsigned> excluded;

    bool allows(unsigned p) const;
    std::string str() const;
    static CharPolicy parse(const std::string& s);
};

struct SpaceModel {
    std::string name;
    std::vector<int> degrees;  // generator degrees of H^*(BG), all even
    int lie_dim = 0;           // dim G = sum (deg - 1), stored and checked
    CharPolicy chars;
};

class Catalog {
  public:
    static const Catalog& builtin();
    static Catalog parse(const std::string& text);
    static Catalog load_file(const std::string& path);

    const std::vector<SpaceModel>& entries() const { return entries_; }

    // throws catalog_error for unknown names or disallowed characteristics
    const SpaceModel& lookup(const std::string& name, const FieldSpec& field) const;

    const SpaceModel* find(const std::string& name) const;

  private:
    void validate() const;
    std::vector<SpaceModel> entries_;
};

inline AlgebraPtr model_algebra(const SpaceModel& m, const FieldSpec& field, int D) {
    return make_polynomial_algebra(field, m.degrees, D);
}

}  // namespace ghl
