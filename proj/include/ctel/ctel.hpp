#ifndef CTEL_CTEL_HPP
#define CTEL_CTEL_HPP

#include <ctel/errors.hpp>
#include <ctel/exact/matrix.hpp>
#include <ctel/exact/multipoly.hpp>
#include <ctel/exact/number.hpp>
#include <ctel/exact/rational_function.hpp>
#include <ctel/exact/ufrac.hpp>
#include <ctel/exact/upoly.hpp>
#include <ctel/ore/operator.hpp>
#include <ctel/ore/recurrence.hpp>
#include <ctel/hyper/gosper.hpp>
#include <ctel/hyper/sum_recurrence.hpp>
#include <ctel/hyper/term.hpp>
#include <ctel/hyper/zeilberger.hpp>
#include <ctel/rational/az.hpp>
#include <ctel/rational/hermite.hpp>
#include <ctel/rational/order_degree.hpp>
#include <ctel/rational/reduction_ct.hpp>
#include <ctel/diagonal/diagonal.hpp>
#include <ctel/cli/expr.hpp>

#endif
