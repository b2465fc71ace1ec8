#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "twocy/ainfinity.hpp"
#include "twocy/localmodel.hpp"
#include "twocy/nccalc.hpp"
#include "twocy/quiver.hpp"
#include "twocy/repmod.hpp"

namespace twocy::io {

using Json = nlohmann::ordered_json;

constexpr int kVersion = 1;

/// Schema violation, located by a JSON pointer into the document.
class InputError : public std::invalid_argument {
   public:
    InputError(std::string path, const std::string& message)
        : std::invalid_argument((path.empty() ? std::string("/") : path) + ": " + message), path_(std::move(path)), message_(message) {}
    const std::string& path() const { return path_; }
    const std::string& detail() const { return message_; }

   private:
    std::string path_;
    std::string message_;
};

/// Convention flags every document carries; parsing rejects other values.
Json conventions();

/// "rationals" or "fp:P".
FieldCtx parse_field(const std::string& s);
std::string field_name(const FieldCtx& f);

/// "n", "n/d", or {"mod": p, "val": v}.
Scalar parse_scalar(const Json& j, const std::string& path);
Json scalar_json(const Scalar& s);

/// A pairing given by basis labels, resolved against a category on use.
struct PairingDoc {
    int dim = 2;
    std::vector<std::tuple<std::string, std::string, Scalar>> entries;

    CyclicPairing resolve(const AInfCategory& cat) const;
    static PairingDoc from(const AInfCategory& cat, const CyclicPairing& p);
    bool operator==(const PairingDoc&) const = default;
};

/// A cyclic function over the letters of a category shape (objects, basis,
/// units); the operations of the shape are ignored.
struct PotentialDoc {
    AInfCategory shape;
    NCFunction f;
};

using Payload = std::variant<Quiver, DGQuiverAlgebra, AInfCategory, PairingDoc, PotentialDoc, MatrixRep, HNQuery>;

struct Document {
    std::string kind;
    Payload payload;
};

extern const std::vector<std::string> kKinds;

/// Validates the envelope (kind, version, conventions) and the payload.
Document parse_document(const Json& j);
Document read_document(const std::string& path);
Json to_json(const Document& d);
Json envelope(const std::string& kind, Json payload);

Json quiver_json(const Quiver& q);
Quiver parse_quiver(const Json& j, const std::string& path);
Json dg_algebra_json(const DGQuiverAlgebra& a);
DGQuiverAlgebra parse_dg_algebra(const Json& j, const std::string& path);
Json ainf_json(const AInfCategory& c);
AInfCategory parse_ainf(const Json& j, const std::string& path);
Json pairing_json(const PairingDoc& p);
PairingDoc parse_pairing(const Json& j, const std::string& path);
Json potential_json(const PotentialDoc& p);
PotentialDoc parse_potential(const Json& j, const std::string& path);
Json matrix_rep_json(const MatrixRep& r);
MatrixRep parse_matrix_rep(const Json& j, const std::string& path);
Json hn_query_json(const HNQuery& q);
HNQuery parse_hn_query(const Json& j, const std::string& path);

Json polynomial_json(const RatPolynomial& p);
RatPolynomial parse_polynomial(const Json& j, const std::string& path);

/// Canonical text form: two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace twocy::io
