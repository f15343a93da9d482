pub mod candidates;
pub mod coord;
pub mod curve;
pub mod curve_file;
pub mod error;
pub mod frechet;
pub mod hardgen;
pub mod index;
pub mod oracle;
pub mod point;
pub mod simplify;

pub use candidates::{
    generate_candidates, generate_keys, generate_keys2, generate_orders, snap_curve, GridKey, GridSpec, OrderSeq,
};
pub use coord::{Coord, Interval, Rational, COORD_LIMIT, COORD_LIMIT_2D};
pub use curve::{AnyCurve, Curve, Curve1, Curve2, Direction};
pub use curve_file::{CurveFile, Decimal, Scale};
pub use error::{Error, Result};
pub use frechet::{frechet_decide, Frontier};
pub use hardgen::{generate, sparse_transform, GadgetCurves, GadgetFamily, OvInstance};
pub use index::{AnnIndex, IndexParams, Limits, QueryOutcome, QueryStats, Variant};
pub use point::{Point, Point2, QuadParam};
pub use simplify::{
    check_signature, check_straightening, compute_signature, find_visiting_order, Signature, Straightening,
    VisitingOrder,
};
