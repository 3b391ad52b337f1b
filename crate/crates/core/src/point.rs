use serde::{Deserialize, Serialize};

use crate::graph::GraphPoint;
use crate::rational::{self, Q};

/// A point of one of the four model families.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Point {
    Scalar(#[serde(with = "rational::serde_q")] Q),
    Graph(GraphPoint),
    Vector(#[serde(with = "rational::serde_qvec")] Vec<Q>),
}

impl Point {
    pub fn scalar(&self) -> Option<&Q> {
        match self {
            Point::Scalar(x) => Some(x),
            _ => None,
        }
    }

    pub fn graph(&self) -> Option<&GraphPoint> {
        match self {
            Point::Graph(g) => Some(g),
            _ => None,
        }
    }

    pub fn vector(&self) -> Option<&[Q]> {
        match self {
            Point::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn vertex(v: usize) -> Point {
        Point::Graph(GraphPoint::vertex(v))
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::Scalar(x) => write!(f, "{}", rational::render(x)),
            Point::Graph(g) => write!(f, "{g}"),
            Point::Vector(v) => {
                let parts: Vec<String> = v.iter().map(rational::render).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn json_forms_round_trip() {
        for (p, text) in [
            (Point::Scalar(ratio(1, 3)), r#""1/3""#),
            (Point::vertex(4), r#"{"vertex":4}"#),
            (Point::Graph(GraphPoint::Edge { edge: 2, t: ratio(1, 2) }), r#"{"edge":2,"t":"1/2"}"#),
            (Point::Vector(vec![ratio(1, 1), ratio(-2, 3)]), r#"["1/1","-2/3"]"#),
        ] {
            assert_eq!(serde_json::to_string(&p).unwrap(), text);
            assert_eq!(serde_json::from_str::<Point>(text).unwrap(), p);
        }
    }
}
