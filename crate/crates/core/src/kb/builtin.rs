//! Compiled-in catalog: the four microservices decision models.
//!
//! Pattern summaries are the catalog table rows verbatim. Impacts carry a
//! short note naming the stated reason where one is given. Graph topology is
//! reconstructed from the textual decision descriptions.

use crate::model::{
    ComplementsEdge, DecisionModel, DesignArea, FlowEdge, Node, NodeKind, Pattern, Polarity, QaImpact, QualityAttribute,
};

use super::KbData;

pub const BUILTIN_VERSION: &str = "1";

pub(crate) fn builtin_data() -> KbData {
    KbData {
        kb_version: BUILTIN_VERSION.to_string(),
        qa_catalog: qa_catalog(),
        patterns: [
            decomposition_patterns(),
            security_patterns(),
            communication_patterns(),
            discovery_patterns(),
        ]
        .concat(),
        models: vec![
            decomposition_model(),
            security_model(),
            communication_model(),
            discovery_model(),
        ],
    }
}

fn qa_catalog() -> Vec<QualityAttribute> {
    vec![
        QualityAttribute::new("availability", "Availability"),
        QualityAttribute::new("scalability", "Scalability"),
        QualityAttribute::new("cohesion", "Cohesion"),
        QualityAttribute::new("deployment", "Deployment").with_alias("deployability"),
        QualityAttribute::new("performance", "Performance"),
        QualityAttribute::new("maintainability", "Maintainability"),
        QualityAttribute::new("flexibility", "Flexibility"),
        QualityAttribute::new("granularity", "Granularity"),
        QualityAttribute::new("reliability", "Reliability"),
        QualityAttribute::new("reusability", "Reusability"),
        QualityAttribute::new("security", "Security"),
        QualityAttribute::new("functional-suitability", "Functional suitability"),
        QualityAttribute::new("portability", "Portability"),
        QualityAttribute::new("response-time", "Response time"),
        QualityAttribute::new("data-consistency", "Data consistency"),
        QualityAttribute::new("execution-cost", "Execution cost"),
        QualityAttribute::new("coupling", "Coupling"),
        QualityAttribute::new("understandability", "Understandability"),
        QualityAttribute::new("confidentiality", "Confidentiality"),
        QualityAttribute::new("integrity", "Integrity"),
        QualityAttribute::new("accountability", "Accountability"),
        QualityAttribute::new("authenticity", "Authenticity"),
        QualityAttribute::new("recoverability", "Recoverability"),
        QualityAttribute::new("complexity", "Complexity"),
        QualityAttribute::new("resilience", "Resilience").with_alias("resiliency"),
        QualityAttribute::new("latency", "Latency"),
        QualityAttribute::new("testability", "Testability"),
        QualityAttribute::new("interoperability", "Interoperability"),
        QualityAttribute::new("development-cost", "Development cost"),
    ]
}

struct PatternBuilder(Pattern);

fn pattern(area: DesignArea, id: &str, name: &str, summary: &str) -> PatternBuilder {
    PatternBuilder(Pattern {
        id: id.to_string(),
        name: name.to_string(),
        area,
        summary: summary.to_string(),
        impacts: Vec::new(),
        constraints: Vec::new(),
        sources: Vec::new(),
    })
}

impl PatternBuilder {
    fn impact(mut self, polarity: Polarity, qas: &[&str], note: Option<&str>) -> Self {
        for qa in qas {
            self.0.impacts.push(QaImpact {
                qa: qa.to_string(),
                polarity,
                note: note.map(str::to_string),
            });
        }
        self
    }

    fn plus(self, qas: &[&str]) -> Self {
        self.impact(Polarity::Positive, qas, None)
    }

    fn plus_because(self, qas: &[&str], note: &str) -> Self {
        self.impact(Polarity::Positive, qas, Some(note))
    }

    fn minus_because(self, qas: &[&str], note: &str) -> Self {
        self.impact(Polarity::Negative, qas, Some(note))
    }

    fn constraint(mut self, text: &str) -> Self {
        self.0.constraints.push(text.to_string());
        self
    }

    fn sources(mut self, keys: &[&str]) -> Self {
        self.0.sources.extend(keys.iter().map(|k| k.to_string()));
        self
    }

    fn build(self) -> Pattern {
        self.0
    }
}

fn decomposition_patterns() -> Vec<Pattern> {
    use DesignArea::Decomposition as D;
    vec![
        pattern(D, "decomposed-by-subdomains", "Decomposed by subdomains",
            "Define services corresponding to Domain-Driven Design (DDD) subdomains.")
            .plus(&["flexibility", "granularity", "reliability", "reusability", "security", "functional-suitability", "portability"])
            .constraint("Practitioners need to understand the overall business")
            .sources(&["richardson2018microservices", "AWS"])
            .build(),
        pattern(D, "decomposed-by-business-capabilities", "Decomposed by business capabilities",
            "Define services corresponding to business capabilities.")
            .plus_because(&["granularity", "performance", "security"],
                "when capabilities come from the client organization's structure, purposes, and processes")
            .minus_because(&["flexibility"], "application design is tightly coupled with the business model")
            .constraint("Business capabilities must be identified by understanding the client organization's structure, purposes, and business processes")
            .sources(&["richardson2018microservices", "AWS"])
            .build(),
        pattern(D, "service-per-team", "Service per team",
            "Break down the application into microservices that individual teams can manage.")
            .plus(&["availability", "scalability", "cohesion", "deployment", "performance", "maintainability"])
            .minus_because(&["development-cost"], "large projects need to hire more people")
            .constraint("only one small team (5–9 people) owns one microservice")
            .constraint("Each team independently develops, tests, deploys, and scales its microservice and negotiates APIs with other teams")
            .sources(&["richardson2018microservices", "AWS"])
            .build(),
        pattern(D, "decomposed-by-transactions", "Decomposed by transactions",
            "An application typically needs to call multiple microservices to complete one business transaction. To avoid latency issues, services can be defined based on business transactions.")
            .plus_because(&["response-time", "data-consistency", "availability"], "grouping microservices avoids latency issues")
            .minus_because(&["execution-cost", "coupling"], "multiple functionalities are implemented in one microservice")
            .sources(&["AWS"])
            .build(),
        pattern(D, "scenario-analysis", "Scenario analysis",
            "Identify the business capabilities by analyzing the nouns and verbs from given business scenarios.")
            .plus(&["scalability"])
            .minus_because(&["performance", "coupling"], "imprecise microservice boundaries")
            .constraint("Practitioners need enough time to develop and describe the scenarios and the architecture")
            .sources(&["tusjunt2018refactoring"])
            .build(),
        pattern(D, "graph-based-approach", "Graph-based approach",
            "Identify microservices from the source code of existing monolithic applications by graph clustering and visualization techniques.")
            .plus_because(&["reusability"], "reuses the existing code")
            .plus_because(&["understandability"], "visualizes extracted microservices and their relationships")
            .sources(&["kamimura2018extracting"])
            .build(),
        pattern(D, "data-flow-driven-approach", "Data Flow-Driven (DFD) approach",
            "Follow a top-down approach in which data flow diagrams contain the business requirements that are later partitioned through a formal algebra algorithm for identifying microservices.")
            .plus(&["availability", "scalability", "flexibility"])
            .minus_because(&["performance", "reusability"], "complex data flow diagrams")
            .constraint("Business requirements must be elicited and refined into fine-grained data flow diagrams")
            .sources(&["li2019dataflow"])
            .build(),
    ]
}

fn security_patterns() -> Vec<Pattern> {
    use DesignArea::Security as S;
    vec![
        pattern(S, "access-and-identity-tokens", "Access and identity tokens",
            "Verifies that a user is authorized to perform specific operations or not")
            .plus(&["confidentiality", "integrity", "accountability", "authenticity", "recoverability"])
            .sources(&["SecurityPatterns1", "SecurityPatterns2", "richardson2018microservices"])
            .build(),
        pattern(S, "layered-defence", "Layered defence",
            "Protect microservices systems by introducing multiple gateways and API-lead architecture")
            .plus_because(&["security", "confidentiality", "integrity"], "per-layer API gateways make deep intrusion difficult")
            .minus_because(&["complexity"], "multiple API layers and gateways")
            .sources(&["SecurityPatterns1"])
            .build(),
        pattern(S, "service-level-authorization", "Service-level authorization",
            "Give freedom to each microservice to control and enforce the access control policies for communication")
            .plus(&["security", "availability", "resilience"])
            .minus_because(&["latency"], "additional network calls to the remote PDP endpoint")
            .constraint("Access control policies (PAP, PDP, PEP, PIP) must be implemented, e.g. with XACML or NGAC")
            .sources(&["OWASP"])
            .build(),
        pattern(S, "edge-level-authorization", "Edge-level authorization",
            "Secure the edge points (API gateway) of microservices")
            .plus(&["security", "integrity"])
            .constraint("Hard to implement in a complex ecosystem with many roles and access control policies")
            .constraint("Only the API gateway is secured, which violates the defense-in-depth policy")
            .sources(&["OWASP"])
            .build(),
        pattern(S, "https-enforcement", "HTTPS enforcement",
            "Suggests using HTTPS instead of HTTP to secure communication between microservices.")
            .sources(&["SecurityPatterns1", "SecurityPatterns2", "OWASP"])
            .build(),
        pattern(S, "api-rate-limiting", "API rate limiting",
            "Slow down the attacks from intruders")
            .plus_because(&["security", "authenticity"], "protects against abusive actions such as excessive API calls")
            .sources(&["SecurityPatterns1", "SecurityPatterns2"])
            .build(),
        pattern(S, "encrypt-and-protect-secrets", "Encrypt and protect secrets",
            "Use tools (e.g., HashiCorp Vault, Microsoft Azure Key Vault, Amazon KMS) to secure the API key, user credentials, and other credentials related to microservices.")
            .sources(&["SecurityPatterns1", "SecurityPatterns2", "SecurityOCTA"])
            .build(),
        pattern(S, "scan-dependencies", "Scan dependencies",
            "Scanning programs are used to detect the security vulnerabilities that may occurs because of dependency issues")
            .sources(&["SecurityPatterns1", "SecurityPatterns2"])
            .build(),
    ]
}

fn communication_patterns() -> Vec<Pattern> {
    use DesignArea::Communication as C;
    vec![
        pattern(C, "api-gateway", "API gateway",
            "Provide a single entry point to clients for accessing microservices")
            .plus(&["security", "availability", "portability"])
            .minus_because(&["response-time"], "additional network hop")
            .minus_because(&["complexity"], "developing, deploying, and managing the API gateway")
            .sources(&["richardson2018microservices"])
            .build(),
        pattern(C, "backend-for-frontend", "Backend for frontend",
            "Define a separate API gateway according to type of application client")
            .plus(&["security", "availability", "portability"])
            .plus_because(&["response-time"], "dedicated API gateway for each type of client")
            .constraint("Not appropriate for microservices systems with a single interface (e.g., only a Web interface)")
            .sources(&["richardson2018microservices"])
            .build(),
        pattern(C, "aggregator-microservice", "Aggregator microservice",
            "Collect related items of data from multiple microservices")
            .plus(&["scalability", "flexibility"])
            .minus_because(&["latency"], "invokes multiple microservices per request")
            .constraint("Returns aggregated data to clients via an API gateway or BFF gateway")
            .sources(&["2017Architectural"])
            .build(),
        pattern(C, "proxy-microservices", "Proxy microservices",
            "Collect related items of data from multiple microservices through dumb and smart proxies")
            .sources(&["2017Architectural"])
            .build(),
        pattern(C, "remote-procedure-invocation", "Remote procedure invocation",
            "Establish inter-service communication via a request/reply-based protocol")
            .plus(&["flexibility", "reusability", "performance"])
            .sources(&["richardson2018microservices"])
            .build(),
        pattern(C, "asynchronous-messaging", "Asynchronous messaging",
            "Message sender does not wait for response of corresponding recipient microservices")
            .plus(&["scalability"])
            .plus_because(&["coupling"], "looser coupling between sender and recipients")
            .minus_because(&["testability"], "debugging asynchronous messaging is difficult")
            .sources(&["richards2015microservices"])
            .build(),
        pattern(C, "publish-subscribe-messaging", "Publish-subscribe messaging",
            "Allow sender microservice to broadcast the message to zero or more recipient microservices")
            .sources(&["richards2015microservices", "2017Architectural"])
            .build(),
        pattern(C, "publish-asynchronous-messaging", "Publish-asynchronous messaging",
            "Allow sender microservice to broadcast the message to one or more recipient microservices and get the response from some recipient microservices")
            .sources(&["richards2015microservices", "2017Architectural"])
            .build(),
        pattern(C, "asynchronous-request-reply", "Asynchronous request-reply",
            "Allow sender microservice to directly send a request message to a recipient microservice and get the immediate response")
            .sources(&["richards2015microservices", "2017Architectural"])
            .build(),
        pattern(C, "synchronous-messaging", "Synchronous messaging",
            "Message sender waits for response of corresponding recipient microservices")
            .plus(&["availability", "scalability", "maintainability", "testability"])
            .plus_because(&["response-time"], "lower than the response time of asynchronous messaging")
            .minus_because(&["coupling"], "sender waits on the recipient")
            .sources(&["2017Architectural"])
            .build(),
        pattern(C, "idempotent-consumer", "Idempotent consumer",
            "Detect and discard duplicate messages from sender microservices")
            .sources(&["richardson2018microservices"])
            .build(),
        pattern(C, "anti-corruption-layer", "Anti-corruption layer",
            "Used to communicate the polyglot microservices")
            .plus(&["availability", "interoperability"])
            .minus_because(&["latency"], "extra layer between microservices")
            .sources(&["Satish"])
            .build(),
    ]
}

fn discovery_patterns() -> Vec<Pattern> {
    use DesignArea::Discovery as V;
    vec![
        pattern(V, "service-registry", "Service registry",
            "Hold the dynamic IP addresses of all service instances")
            .constraint("Required by all other service discovery patterns")
            .sources(&["richardson2018microservices", "SDPMSA"])
            .build(),
        pattern(V, "client-side-service-discovery", "Client-side service discovery",
            "Directly access the dynamic addresses of service instances from service registry")
            .plus(&["scalability"])
            .minus_because(&["coupling"], "direct calls between clients and the service registry")
            .constraint("Service registration must be implemented separately for each programming language used by the microservices")
            .sources(&["richardson2018microservices", "SDPMSA"])
            .build(),
        pattern(V, "server-side-service-discovery", "Server-side service discovery",
            "Access the dynamic addresses of service instances via routers from service registry")
            .constraint("Clients reach the service registry through a router (load balancer)")
            .sources(&["richardson2018microservices", "SDPMSA"])
            .build(),
        pattern(V, "microservice-chassis", "Microservice chassis",
            "Enable the implementation of client-side service pattern via Microservices chassis frameworks")
            .plus(&["availability", "resilience"])
            .constraint("Requires a chassis framework such as Spring Boot, Spring Cloud, or Gizmo")
            .sources(&["richardson2018microservices", "SDPMSA"])
            .build(),
        pattern(V, "self-registration", "Self registration",
            "Enables microservices to register their instances with service registry on service startup and update service status periodically")
            .plus(&["scalability", "maintainability", "reusability"])
            .minus_because(&["coupling"], "every service instance must register itself with the registry")
            .constraint("Each service instance must periodically renew its registration with the service registry")
            .sources(&["richardson2018microservices", "SDPMSA"])
            .build(),
        pattern(V, "3rd-party-registration", "3rd party registration",
            "3rd party registration pattern is an alternative solution of Self registration pattern")
            .plus(&["scalability"])
            .plus_because(&["coupling"], "decreases coupling between microservices")
            .sources(&["richardson2018microservices", "SDPMSA"])
            .build(),
    ]
}

fn edge(from: &str, to: &str, condition: &str) -> FlowEdge {
    FlowEdge::new(from, to, Some(condition))
}

fn flow(from: &str, to: &str) -> FlowEdge {
    FlowEdge::new(from, to, None)
}

fn decomposition_model() -> DecisionModel {
    use NodeKind::GatewayExclusive as X;
    DecisionModel {
        id: DesignArea::Decomposition,
        title: "Application decomposition into microservices".into(),
        nodes: vec![
            Node::start("start"),
            Node::gateway("team-size", X, "Is the team size defined?"),
            Node::gateway(
                "decomposition-basis",
                X,
                "What should define the microservice boundaries?",
            ),
            Node::gateway(
                "decomposition-source",
                X,
                "What is the input for identifying microservices?",
            ),
            Node::pattern("p-decomposed-by-subdomains", "decomposed-by-subdomains"),
            Node::pattern(
                "p-decomposed-by-business-capabilities",
                "decomposed-by-business-capabilities",
            ),
            Node::pattern("p-service-per-team", "service-per-team"),
            Node::pattern("p-decomposed-by-transactions", "decomposed-by-transactions"),
            Node::pattern("p-scenario-analysis", "scenario-analysis"),
            Node::pattern("p-graph-based-approach", "graph-based-approach"),
            Node::pattern("p-data-flow-driven-approach", "data-flow-driven-approach"),
        ],
        flow_edges: vec![
            flow("start", "team-size"),
            edge("team-size", "decomposition-basis", "team size 5–9 people"),
            edge("team-size", "decomposition-source", "team size not defined"),
            edge("decomposition-basis", "p-decomposed-by-subdomains", "DDD subdomains"),
            edge(
                "decomposition-basis",
                "p-decomposed-by-business-capabilities",
                "business capabilities",
            ),
            edge(
                "decomposition-basis",
                "p-service-per-team",
                "what individual teams can manage",
            ),
            edge(
                "decomposition-basis",
                "p-decomposed-by-transactions",
                "business transactions",
            ),
            edge("decomposition-basis", "p-scenario-analysis", "business scenarios"),
            edge(
                "decomposition-source",
                "p-graph-based-approach",
                "source code of a legacy application",
            ),
            edge(
                "decomposition-source",
                "p-data-flow-driven-approach",
                "data flow diagrams",
            ),
        ],
        complements_edges: vec![
            ComplementsEdge::new("service-per-team", "decomposed-by-subdomains"),
            ComplementsEdge::new("service-per-team", "decomposed-by-business-capabilities"),
        ],
    }
}

fn security_model() -> DecisionModel {
    use NodeKind::GatewayInclusive as O;
    DecisionModel {
        id: DesignArea::Security,
        title: "Microservices security".into(),
        nodes: vec![
            Node::start("start"),
            Node::gateway(
                "security-levels",
                O,
                "At which levels must the microservices be secured?",
            ),
            Node::gateway("application-level", O, "How should the application level be secured?"),
            Node::gateway(
                "communication-level",
                O,
                "How should communication between microservices be secured?",
            ),
            Node::gateway("code-level", O, "How should the microservices code be secured?"),
            Node::pattern("p-access-and-identity-tokens", "access-and-identity-tokens"),
            Node::pattern("p-layered-defence", "layered-defence"),
            Node::pattern("p-service-level-authorization", "service-level-authorization"),
            Node::pattern("p-edge-level-authorization", "edge-level-authorization"),
            Node::pattern("p-https-enforcement", "https-enforcement"),
            Node::pattern("p-api-rate-limiting", "api-rate-limiting"),
            Node::pattern("p-encrypt-and-protect-secrets", "encrypt-and-protect-secrets"),
            Node::pattern("p-scan-dependencies", "scan-dependencies"),
        ],
        flow_edges: vec![
            flow("start", "security-levels"),
            edge("security-levels", "application-level", "application level"),
            edge("security-levels", "communication-level", "communication level"),
            edge("security-levels", "code-level", "code level"),
            edge(
                "application-level",
                "p-access-and-identity-tokens",
                "verify user credentials and privileges",
            ),
            edge(
                "application-level",
                "p-layered-defence",
                "defense in depth across API layers",
            ),
            edge(
                "communication-level",
                "p-service-level-authorization",
                "each microservice enforces its own access policies",
            ),
            edge(
                "communication-level",
                "p-edge-level-authorization",
                "authorize at the API gateway",
            ),
            edge(
                "communication-level",
                "p-https-enforcement",
                "encrypt traffic between microservices",
            ),
            edge("code-level", "p-api-rate-limiting", "slow down attacks from intruders"),
            edge(
                "code-level",
                "p-encrypt-and-protect-secrets",
                "protect API keys and credentials",
            ),
            edge("code-level", "p-scan-dependencies", "detect vulnerable dependencies"),
        ],
        complements_edges: vec![ComplementsEdge::new("edge-level-authorization", "https-enforcement")],
    }
}

fn communication_model() -> DecisionModel {
    use NodeKind::{GatewayExclusive as X, GatewayInclusive as O};
    DecisionModel {
        id: DesignArea::Communication,
        title: "Microservices communication".into(),
        nodes: vec![
            Node::start("start"),
            Node::gateway(
                "communication-kind",
                X,
                "Which kind of communication is being designed?",
            ),
            Node::gateway("client-entry", X, "How do application clients reach the microservices?"),
            Node::gateway(
                "data-composition",
                X,
                "How is data from multiple microservices composed for the client?",
            ),
            Node::gateway("inter-service", O, "Which inter-service communication concerns apply?"),
            Node::gateway(
                "interaction-style",
                X,
                "Which interaction style should microservices use?",
            ),
            Node::gateway("async-variant", X, "Which asynchronous messaging variant fits?"),
            Node::pattern("p-api-gateway", "api-gateway"),
            Node::pattern("p-backend-for-frontend", "backend-for-frontend"),
            Node::pattern("p-aggregator-microservice", "aggregator-microservice"),
            Node::pattern("p-proxy-microservices", "proxy-microservices"),
            Node::pattern("p-remote-procedure-invocation", "remote-procedure-invocation"),
            Node::pattern("p-asynchronous-messaging", "asynchronous-messaging"),
            Node::pattern("p-publish-subscribe-messaging", "publish-subscribe-messaging"),
            Node::pattern("p-publish-asynchronous-messaging", "publish-asynchronous-messaging"),
            Node::pattern("p-asynchronous-request-reply", "asynchronous-request-reply"),
            Node::pattern("p-synchronous-messaging", "synchronous-messaging"),
            Node::pattern("p-idempotent-consumer", "idempotent-consumer"),
            Node::pattern("p-anti-corruption-layer", "anti-corruption-layer"),
        ],
        flow_edges: vec![
            flow("start", "communication-kind"),
            edge("communication-kind", "client-entry", "client-to-service interaction"),
            edge("communication-kind", "inter-service", "inter-service communication"),
            edge("client-entry", "p-api-gateway", "single entry point for all clients"),
            edge(
                "client-entry",
                "p-backend-for-frontend",
                "separate gateway per client type",
            ),
            flow("p-api-gateway", "data-composition"),
            flow("p-backend-for-frontend", "data-composition"),
            edge(
                "data-composition",
                "p-aggregator-microservice",
                "aggregate related data items",
            ),
            edge(
                "data-composition",
                "p-proxy-microservices",
                "delegate through dumb or smart proxies",
            ),
            edge("inter-service", "interaction-style", "choose an interaction style"),
            edge(
                "inter-service",
                "p-idempotent-consumer",
                "duplicate messages must be handled",
            ),
            edge(
                "inter-service",
                "p-anti-corruption-layer",
                "polyglot or legacy microservices must communicate",
            ),
            edge(
                "interaction-style",
                "p-remote-procedure-invocation",
                "request/reply over a domain-specific protocol",
            ),
            edge(
                "interaction-style",
                "p-asynchronous-messaging",
                "sender does not wait for a response",
            ),
            edge(
                "interaction-style",
                "p-synchronous-messaging",
                "sender waits for a response",
            ),
            flow("p-asynchronous-messaging", "async-variant"),
            edge(
                "async-variant",
                "p-publish-subscribe-messaging",
                "broadcast to zero or more recipients",
            ),
            edge(
                "async-variant",
                "p-publish-asynchronous-messaging",
                "broadcast and collect responses",
            ),
            edge(
                "async-variant",
                "p-asynchronous-request-reply",
                "direct request with an immediate response",
            ),
        ],
        complements_edges: vec![
            ComplementsEdge::new("aggregator-microservice", "api-gateway"),
            ComplementsEdge::new("aggregator-microservice", "backend-for-frontend"),
            ComplementsEdge::new("proxy-microservices", "api-gateway"),
            ComplementsEdge::new("proxy-microservices", "backend-for-frontend"),
            ComplementsEdge::new("asynchronous-messaging", "publish-subscribe-messaging"),
            ComplementsEdge::new("asynchronous-messaging", "publish-asynchronous-messaging"),
            ComplementsEdge::new("asynchronous-messaging", "asynchronous-request-reply"),
            ComplementsEdge::new("idempotent-consumer", "asynchronous-messaging"),
            ComplementsEdge::new("idempotent-consumer", "synchronous-messaging"),
        ],
    }
}

fn discovery_model() -> DecisionModel {
    use NodeKind::{GatewayExclusive as X, GatewayParallel as P};
    DecisionModel {
        id: DesignArea::Discovery,
        title: "Service discovery".into(),
        nodes: vec![
            Node::start("start"),
            Node::gateway(
                "discovery-concerns",
                P,
                "Registry, registration, and discovery are all needed",
            ),
            Node::gateway("registration", X, "How are service instances registered?"),
            Node::gateway(
                "discovery",
                X,
                "How do clients find the current location of a service instance?",
            ),
            Node::pattern("p-service-registry", "service-registry"),
            Node::pattern("p-client-side-service-discovery", "client-side-service-discovery"),
            Node::pattern("p-server-side-service-discovery", "server-side-service-discovery"),
            Node::pattern("p-microservice-chassis", "microservice-chassis"),
            Node::pattern("p-self-registration", "self-registration"),
            Node::pattern("p-3rd-party-registration", "3rd-party-registration"),
        ],
        flow_edges: vec![
            flow("start", "discovery-concerns"),
            flow("discovery-concerns", "p-service-registry"),
            flow("discovery-concerns", "registration"),
            flow("discovery-concerns", "discovery"),
            edge(
                "registration",
                "p-self-registration",
                "service instances register themselves",
            ),
            edge(
                "registration",
                "p-3rd-party-registration",
                "a third party registers instances on startup and shutdown",
            ),
            edge(
                "discovery",
                "p-client-side-service-discovery",
                "clients query the service registry directly",
            ),
            edge(
                "discovery",
                "p-microservice-chassis",
                "a chassis framework handles discovery",
            ),
            edge(
                "discovery",
                "p-server-side-service-discovery",
                "clients go through a router",
            ),
        ],
        complements_edges: vec![
            ComplementsEdge::new("client-side-service-discovery", "self-registration"),
            ComplementsEdge::new("client-side-service-discovery", "microservice-chassis"),
        ],
    }
}
