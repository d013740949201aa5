// JSON documents for the command-line surface.
//
// Integers are written as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; both spellings are accepted on input. Readers
// throw InputError with the offending path, and ignore keys they do not use
// (so every output may carry a "params" block).

#ifndef HOCOALG_JSON_IO_HPP
#define HOCOALG_JSON_IO_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hocoalg/freeab_comonad.hpp"
#include "hocoalg/intlinalg.hpp"
#include "hocoalg/sab.hpp"
#include "hocoalg/sset.hpp"
#include "hocoalg/tower.hpp"

namespace hocoalg {

using Json = nlohmann::json;

Json integer_to_json(const Integer& v);
Integer integer_from_json(const Json& j, const std::string& where = "integer");

/// {"rows", "cols", "entries": [[i, j, v], ...]}
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j, const std::string& where = "matrix");

/// {"gen": id, "degens": [...]}
Json simplex_to_json(const FiniteSimplicialSet& x, const SimplexRef& r);
SimplexRef simplex_from_json(const FiniteSimplicialSet& x, const Json& j,
                             const std::string& where = "simplex");

/// {"generators": [{"id", "dim", "faces"}], "basepoint": id}
Json sset_to_json(const FiniteSimplicialSet& x);
FiniteSimplicialSet sset_from_json(const Json& j);

/// {"source", "target", "assignment": [{"gen", "image"}]} in source order.
Json sset_map_to_json(const SSetMap& f);
SSetMap sset_map_from_json(const Json& j);

/// {"bound", "levels": [{"rank", "torsion", "faces", "degens"}]}; torsion
/// lists the modulus of every coordinate, 0 for a copy of Z.
Json sab_to_json(const SimplicialAbelianGroup& a);
SimplicialAbelianGroup sab_from_json(const Json& j);

/// {"components": [...]} between given groups.
Json sab_map_to_json(const SAbMap& f);
SAbMap sab_map_from_json(const Json& j, SAbPtr source, SAbPtr target);

/// {"level", "depth", "terms"}; a depth-0 term is [coeff, basis index], a
/// deeper term is [coeff, inner terms].
Json free_element_to_json(const FreeElement& e);
FreeElement free_element_from_json(const Json& j);

/// {"carrier": sab, "coaction": [{"level", "basis_index", "image"}], "labels"}
Json coalgebra_to_json(const KCoalgebra& c);
KCoalgebra coalgebra_from_json(const Json& j);

/// {"codegrees": [sab], "cofaces": [[[matrix, ...], ...], ...]}
Json cosimplicial_to_json(const MatrixSemiCosimplicial& z);
MatrixSemiCosimplicial cosimplicial_from_json(const Json& j);

Json group_to_json(const AbelianGroup& g);
/// Levels with their homotopy groups, keyed by degree.
Json group_table_to_json(const std::vector<AbelianGroup>& table);

Json identity_report_to_json(const IdentityReport& r);
Json coalgebra_report_to_json(const CoalgebraReport& r);

}  // namespace hocoalg

#endif  // HOCOALG_JSON_IO_HPP
