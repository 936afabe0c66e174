//! Built-in demo scenarios, embedded at compile time. Every checker kind
//! is exercised by at least one of them.

pub struct Demo {
    pub name: &'static str,
    pub summary: &'static str,
    pub text: &'static str,
}

pub const DEMOS: [Demo; 8] = [
    Demo {
        name: "plane-identity",
        summary: "unit circle on the flat plane, identity correspondence",
        text: include_str!("../demos/plane-identity.toml"),
    },
    Demo {
        name: "cone-identity",
        summary: "rectifying wave on an origin-apex cone, identity correspondence",
        text: include_str!("../demos/cone-identity.toml"),
    },
    Demo {
        name: "plane-cylinder",
        summary: "plane rolled onto the unit cylinder, circle and helix",
        text: include_str!("../demos/plane-cylinder.toml"),
    },
    Demo {
        name: "helicoid-catenoid",
        summary: "the classical isometric pair with a shared coordinate line",
        text: include_str!("../demos/helicoid-catenoid.toml"),
    },
    Demo {
        name: "homothety-cone",
        summary: "cone scaled by 2, constant dilation c^2 = 4",
        text: include_str!("../demos/homothety-cone.toml"),
    },
    Demo {
        name: "plane-stereographic-sphere",
        summary: "conformal plane-to-sphere chart with varying dilation",
        text: include_str!("../demos/plane-stereographic-sphere.toml"),
    },
    Demo {
        name: "sphere-not-rectifying",
        summary: "great circle on the unit sphere, witness |nu| = 1",
        text: include_str!("../demos/sphere-not-rectifying.toml"),
    },
    Demo {
        name: "paraboloid-monge",
        summary: "Monge paraboloid against its mirror image",
        text: include_str!("../demos/paraboloid-monge.toml"),
    },
];

pub fn find(name: &str) -> Option<&'static Demo> {
    DEMOS.iter().find(|d| d.name == name)
}
