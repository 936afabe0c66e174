//! Darboux-frame machinery for curves on parametric surfaces: jets for
//! exact derivatives, an expression DSL, fundamental forms and frames,
//! rectifying-curve classification, surface correspondences
//! (isometry / homothety / conformal) and the invariance checkers built
//! on top of them.

pub mod arclength;
pub mod expr;
pub mod fdcheck;
pub mod geom;
pub mod jets;
pub mod rectify;
pub mod surfmap;
pub mod theorems;
pub mod tol;
pub mod vec3;

pub use expr::{parse, EvalError, Expr, ParseError};
pub use geom::{
    frame_sample, sample_curve, CurveDerivs, CurveOnSurface, FirstForm, FrameSample, GeomError,
    Parametrization, SecondForm, SurfacePatch,
};
pub use jets::{Func, Jet1, Jet2, JetError, JetNum};
pub use vec3::Vec3;
