use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dialect {
    #[serde(rename = "UML")]
    Uml,
    Ugatze,
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dialect::Uml => "UML",
            Dialect::Ugatze => "Ugatze",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assembly {
    #[serde(default)]
    pub name: String,
    pub dialect: Dialect,
    /// Data types declared by the assembly, beyond the dialect's base types.
    #[serde(default)]
    pub types: Vec<String>,
    pub components: Vec<Component>,
    #[serde(default)]
    pub connectors: Vec<Connector>,
    #[serde(default)]
    pub attachments: Vec<Attachment>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub ports: Vec<Port>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<Profile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Port {
    pub name: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub operations: Vec<Signature>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub protocol: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    In,
    Out,
    Inout,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Param {
    #[serde(rename = "type")]
    pub ty: String,
    pub mode: Mode,
}

/// Operation signature. Parameter order matters; operation sets do not.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Signature {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub params: Vec<Param>,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Connector {
    pub name: String,
    pub kind: String,
    #[serde(rename = "bufferSize", default, skip_serializing_if = "Option::is_none")]
    pub buffer_size: Option<i64>,
    pub roles: Vec<Role>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Role {
    pub name: String,
    pub end: String,
    /// Operations the role carries, when the assembly states them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operations: Option<Vec<Signature>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Attachment {
    pub component: String,
    pub port: String,
    pub connector: String,
    pub role: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Profile {
    #[serde(default)]
    pub required: Vec<Quality>,
    #[serde(default)]
    pub provided: Vec<Quality>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Quality {
    pub name: String,
    #[serde(default)]
    pub numeric: Vec<NumericConstraint>,
    #[serde(default)]
    pub ordinal: Vec<OrdinalConstraint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Characteristic {
    pub name: String,
    pub direction: Direction,
    pub domain: String,
    #[serde(default)]
    pub unit: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Op {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
}

impl Op {
    /// Whether a provided value honours a required bound under this operator.
    pub fn satisfied(self, provided: f64, required: f64) -> bool {
        match self {
            Op::Ge => provided >= required,
            Op::Gt => provided > required,
            Op::Le => provided <= required,
            Op::Lt => provided < required,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericConstraint {
    pub characteristic: Characteristic,
    pub op: Op,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrdinalConstraint {
    pub characteristic: Characteristic,
    pub op: Op,
    pub value: String,
}

impl Assembly {
    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }

    pub fn connector(&self, name: &str) -> Option<&Connector> {
        self.connectors.iter().find(|c| c.name == name)
    }

    pub fn port(&self, component: &str, port: &str) -> Option<&Port> {
        self.component(component)?.ports.iter().find(|p| p.name == port)
    }

    /// Ports attached to a role, in attachment order.
    pub fn attached_ports(&self, connector: &str, role: &str) -> Vec<(&Attachment, &Port)> {
        self.attachments
            .iter()
            .filter(|a| a.connector == connector && a.role == role)
            .filter_map(|a| Some((a, self.port(&a.component, &a.port)?)))
            .collect()
    }

    /// Roles a port is attached to.
    pub fn attached_roles(&self, component: &str, port: &str) -> Vec<&Attachment> {
        self.attachments.iter().filter(|a| a.component == component && a.port == port).collect()
    }

    /// Two distinct components are connected when some connector has a
    /// role attached to each.
    pub fn connected(&self, a: &str, b: &str) -> bool {
        a != b
            && self.connectors.iter().any(|c| {
                let on = |x: &str| self.attachments.iter().any(|t| t.connector == c.name && t.component == x);
                on(a) && on(b)
            })
    }
}
