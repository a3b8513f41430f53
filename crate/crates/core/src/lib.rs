pub mod corpus;
pub mod error;
pub mod exact_geom;
pub mod extremal_gen;
pub mod io;
pub mod link_oracle;
pub mod link_path;
mod oracle_kernel;
pub mod polygon_model;
pub mod raindrop;
pub mod visibility;

pub use error::{Error, Result, ValidationError};
pub use exact_geom::{orient, Point, Scalar, Segment, Sign, Vector};
pub use polygon_model::{Feature, SimplePolygon};
pub use raindrop::{classify, Location};
pub use extremal_gen::{spiral, ExtremalInstance};
pub use io::{parse_polygon_file, Scene};
pub use link_oracle::{link_distance, OracleResult};
pub use link_path::{connect, PathCertificate, Polyline};
pub use raindrop::Component;
