//! Diameters and Borsuk numbers of discrete and continuous geometric graphs.

pub mod cuts;
pub mod discrete;
pub mod exec;
pub mod gen;
pub mod geom;
pub mod graph;
pub mod io;
pub mod fixtures;
pub mod metric;
pub mod monotone;
pub mod svg;
pub mod tree;

pub use exec::Execution;
pub use geom::{Line2, Point2, Tolerance};
pub use graph::{AbstractGraph, GeometricGraph, GraphError, Violation};
pub use metric::{continuous_diameter, ContinuousPoint, Diameter, DiametralSet, Metric};
