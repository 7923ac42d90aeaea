#pragma once

#include <vector>

#include <json.hpp>

#include "opergr/grassmannian.hpp"
#include "opergr/oper.hpp"
#include "opergr/psido.hpp"
#include "opergr/series.hpp"
#include "opergr/times_series.hpp"

namespace opergr {

using Json = nlohmann::ordered_json;

/// ["num", "den"], the form used inside series and tau encodings.
Json rational_pair(const Rational &r);
/// "num/den" (or "num" for integers), the form used for standalone scalars.
Json rational_string(const Rational &r);
/// Accepts ["num","den"], "num/den", "num" or a JSON integer.
Rational rational_from(const Json &j);

/// {"pole": p, "order": N, "coeffs": [...]}
Json series_to_json(const Series &s);
/// A missing "order" marks an exact polynomial: it is truncated at max(default_order, pole + len)
/// and `exact` is left untouched; a present "order" clears `exact`.
Series series_from_json(const Json &j, int default_order, bool &exact);

/// {"bound": D, "times": K, "terms": [{"exps": {"t1": e1, ...}, "coef": [...]}]}; "times" is
/// optional on input and defaults to max(D, 1).
Json times_to_json(const TimesSeries &t);
TimesSeries times_from_json(const Json &j);

Json scalar_oper_to_json(const ScalarOper &s);
ScalarOper scalar_oper_from_json(const Json &j, int default_order, bool &exact);
Json miura_oper_to_json(const MiuraOper &m);
MiuraOper miura_oper_from_json(const Json &j, int default_order, bool &exact);

/// {"floor": f, "depth": d | "exact", "terms": [{"d": k, "coeff": series}], "text": ...}
Json psido_to_json(const PsiDO &a);

/// {"window": [lo, hi], "virtdim": v, "columns": [[[e, "c"], ...], ...]} listing nonzero entries.
Json grass_to_json(const GrassPoint &w);

/// Frame columns given as lists of [exponent, coefficient]. With "complete" (default true)
/// the frame is extended by z^k for every k above the largest listed exponent, up to hi - 1.
std::vector<std::vector<Rational>> frame_from_json(const Json &j, int lo, int hi);

/// {"pairs": [{"a": .., "p": .., "q": ..}], "cutoff": K}
std::vector<TodaPair> pairs_from_json(const Json &j, int &cutoff);

} // namespace opergr
