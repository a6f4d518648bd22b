use std::sync::Arc;
use std::time::Duration;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use msa_advisor_core::advisor::{score_patterns, QaWeights, Session};
use msa_advisor_core::api::to_body;
use msa_advisor_core::builtin_kb;
use msa_advisor_service::{router, router_with_static, AppState};
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(Arc::new(AppState::new(builtin_kb())))
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, String) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or_else(Body::empty, |b| Body::from(b.to_string())))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[tokio::test]
async fn health_and_models() {
    let app = app();
    assert_eq!(
        call(&app, "GET", "/health", None).await,
        (StatusCode::OK, r#"{"status":"ok"}"#.into())
    );
    let (st, body) = call(&app, "GET", "/models", None).await;
    assert_eq!(st, StatusCode::OK);
    let v = json(&body);
    let ids: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["decomposition", "security", "communication", "discovery"]);
    let counts: Vec<u64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["pattern_count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, [7, 8, 12, 6]);
}

#[tokio::test]
async fn custom_kb_with_one_model() {
    let mut data = builtin_kb().into_data();
    data.models.retain(|m| m.id.as_str() == "discovery");
    data.patterns.retain(|p| p.area.as_str() == "discovery");
    let kb = msa_advisor_core::KnowledgeBase::from_data(data).unwrap();
    let app = router(Arc::new(AppState::new(kb)));
    let (_, body) = call(&app, "GET", "/models", None).await;
    assert_eq!(json(&body).as_array().unwrap().len(), 1);
}

#[tokio::test]
async fn model_detail_is_stable() {
    let app = app();
    let (st, a) = call(&app, "GET", "/models/discovery", None).await;
    assert_eq!(st, StatusCode::OK);
    let (_, b) = call(&app, "GET", "/models/discovery", None).await;
    assert_eq!(a, b);
    let v = json(&a);
    assert_eq!(v["patterns"].as_array().unwrap().len(), 6);
    assert!(v["dot"].as_str().unwrap().starts_with("digraph"));
    let (st, body) = call(&app, "GET", "/models/nope", None).await;
    assert_eq!(st, StatusCode::NOT_FOUND);
    assert_eq!(json(&body)["error"]["code"], "E_NOT_FOUND");
}

#[tokio::test]
async fn discovery_walkthrough_matches_engine() {
    let app = app();
    let (st, body) = call(&app, "POST", "/sessions", Some(json!({"model": "discovery"}))).await;
    assert_eq!(st, StatusCode::CREATED);
    let v = json(&body);
    let id = v["session"].as_str().unwrap().to_string();
    assert_eq!(v["selected"], json!(["service-registry"]));

    let (st, body) = call(&app, "GET", &format!("/sessions/{id}/result"), None).await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(json(&body)["error"]["code"], "E_INCOMPLETE");

    let uri = format!("/sessions/{id}/answers");
    let (st, body) = call(
        &app,
        "POST",
        &uri,
        Some(json!({"gateway":"registration","edges":["p-self-registration","p-3rd-party-registration"]})),
    )
    .await;
    assert_eq!(st, StatusCode::CONFLICT);
    assert_eq!(json(&body)["error"]["code"], "E_CHOICE_ARITY");

    let (st, _) = call(
        &app,
        "POST",
        &uri,
        Some(json!({"gateway":"registration","edges":["p-self-registration"]})),
    )
    .await;
    assert_eq!(st, StatusCode::OK);
    let (st, body) = call(
        &app,
        "POST",
        &uri,
        Some(json!({"gateway":"registration","edges":["p-self-registration"]})),
    )
    .await;
    assert_eq!(st, StatusCode::CONFLICT);
    assert_eq!(json(&body)["error"]["code"], "E_NOT_PENDING");

    let (st, body) = call(
        &app,
        "POST",
        &uri,
        Some(json!({"gateway":"discovery","edges":["p-warp"]})),
    )
    .await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(json(&body)["error"]["code"], "E_BAD_EDGE");

    let (st, body) = call(
        &app,
        "POST",
        &uri,
        Some(json!({"gateway":"discovery","edges":["p-client-side-service-discovery"]})),
    )
    .await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(json(&body)["status"], "complete");

    let (st, body) = call(&app, "GET", &format!("/sessions/{id}/result"), None).await;
    assert_eq!(st, StatusCode::OK);
    let v = json(&body);

    // same answers in process
    let kb = builtin_kb();
    let mut s = Session::start(&kb, "discovery").unwrap();
    s.apply_answer(&kb, "registration", &["p-self-registration"]).unwrap();
    s.apply_answer(&kb, "discovery", &["p-client-side-service-discovery"])
        .unwrap();
    let local = s.result(&kb).unwrap();
    assert_eq!(v["selected"], json!(local.selected));
    assert_eq!(v["suggestions"], json!(["microservice-chassis"]));
    assert_eq!(v["decision_log"].as_array().unwrap().len(), 2);
}

#[tokio::test]
async fn expired_sessions_are_gone() {
    let app = router(Arc::new(AppState::with_expiry(builtin_kb(), Duration::ZERO)));
    let (_, body) = call(&app, "POST", "/sessions", Some(json!({"model": "security"}))).await;
    let id = json(&body)["session"].as_str().unwrap().to_string();
    let (st, body) = call(
        &app,
        "POST",
        &format!("/sessions/{id}/answers"),
        Some(json!({"gateway":"security-levels","edges":["application-level"]})),
    )
    .await;
    assert_eq!(st, StatusCode::NOT_FOUND);
    assert_eq!(json(&body)["error"]["code"], "E_NOT_FOUND");
    let (st, _) = call(&app, "GET", "/sessions/unknown/result", None).await;
    assert_eq!(st, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn recommend_matches_engine() {
    let app = app();
    let (st, body) = call(
        &app,
        "POST",
        "/recommend",
        Some(json!({"model":"decomposition","weights":{"flexibility":1.0}})),
    )
    .await;
    assert_eq!(st, StatusCode::OK);
    let kb = builtin_kb();
    let w = QaWeights::from_user(&kb, [("flexibility", 1.0)]).unwrap();
    assert_eq!(body, to_body(&score_patterns(&kb, "decomposition", &w).unwrap()));
    let v = json(&body);
    assert_eq!(v["entries"][0]["pattern"], "decomposed-by-subdomains");

    let (_, body) = call(&app, "POST", "/recommend", Some(json!({"model":"all","weights":{}}))).await;
    let v = json(&body);
    assert_eq!(v["entries"].as_array().unwrap().len(), 33);
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["score"] == 0.0));
}

#[tokio::test]
async fn recommend_errors_name_the_offender() {
    let app = app();
    let (st, body) = call(
        &app,
        "POST",
        "/recommend",
        Some(json!({"model":"all","weights":{"warp-speed":1}})),
    )
    .await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
    let v = json(&body);
    assert_eq!(v["error"]["code"], "E_UNKNOWN_QA");
    assert!(v["error"]["message"].as_str().unwrap().contains("warp-speed"));

    let (st, body) = call(
        &app,
        "POST",
        "/recommend",
        Some(json!({"model":"all","weights":{"latency":1.5}})),
    )
    .await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(json(&body)["error"]["code"], "E_INVALID_WEIGHT");

    let (st, body) = call(&app, "POST", "/recommend", Some(json!({"model":"all","weight":{}}))).await;
    assert_eq!(st, StatusCode::BAD_REQUEST);
    assert_eq!(json(&body)["error"]["code"], "E_BAD_REQUEST");
}

#[tokio::test]
async fn tradeoff_endpoint() {
    let app = app();
    let (st, body) = call(
        &app,
        "POST",
        "/tradeoff",
        Some(json!({"patterns":["synchronous-messaging","asynchronous-messaging"]})),
    )
    .await;
    assert_eq!(st, StatusCode::OK);
    assert!(json(&body)["conflicts"]
        .as_array()
        .unwrap()
        .contains(&json!("coupling")));

    let (_, body) = call(&app, "POST", "/tradeoff", Some(json!({"patterns":["api-gateway"]}))).await;
    let v = json(&body);
    let net = |qa: &str| v["qas"].as_array().unwrap().iter().find(|t| t["qa"] == qa).unwrap()["net"].clone();
    assert_eq!(net("response-time"), json!(-1));
    assert_eq!(net("complexity"), json!(-1));

    let (st, body) = call(&app, "POST", "/tradeoff", Some(json!({"patterns":["nope"]}))).await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(json(&body)["error"]["message"].as_str().unwrap().contains("nope"));
}

#[tokio::test]
async fn unknown_route_is_json_404() {
    let (st, body) = call(&app(), "GET", "/nothing/here", None).await;
    assert_eq!(st, StatusCode::NOT_FOUND);
    assert_eq!(json(&body)["error"]["code"], "E_NOT_FOUND");
}

#[tokio::test]
async fn static_files_served_under_root() {
    let dir = std::env::temp_dir().join(format!("msa-web-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("index.html"), "<html>ui</html>").unwrap();
    let app = router_with_static(Arc::new(AppState::new(builtin_kb())), dir.clone());
    let (st, body) = call(&app, "GET", "/index.html", None).await;
    assert_eq!((st, body.as_str()), (StatusCode::OK, "<html>ui</html>"));
    let (st, _) = call(&app, "GET", "/health", None).await;
    assert_eq!(st, StatusCode::OK);
    std::fs::remove_dir_all(dir).unwrap();
}

#[tokio::test]
async fn concurrent_sessions_stay_independent() {
    let app = app();
    let mut handles = Vec::new();
    for k in 0..16 {
        let app = app.clone();
        handles.push(tokio::spawn(async move {
            let (_, body) = call(&app, "POST", "/sessions", Some(json!({"model": "discovery"}))).await;
            let id = json(&body)["session"].as_str().unwrap().to_string();
            let reg = if k % 2 == 0 {
                "p-self-registration"
            } else {
                "p-3rd-party-registration"
            };
            let uri = format!("/sessions/{id}/answers");
            call(
                &app,
                "POST",
                &uri,
                Some(json!({"gateway":"registration","edges":[reg]})),
            )
            .await;
            call(
                &app,
                "POST",
                &uri,
                Some(json!({"gateway":"discovery","edges":["p-server-side-service-discovery"]})),
            )
            .await;
            let (_, body) = call(&app, "GET", &format!("/sessions/{id}/result"), None).await;
            (
                reg.trim_start_matches("p-").to_string(),
                json(&body)["selected"].clone(),
            )
        }));
    }
    for h in handles {
        let (reg, selected) = h.await.unwrap();
        let sel: Vec<&str> = selected
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap())
            .collect();
        assert_eq!(sel.len(), 3);
        assert!(sel.contains(&reg.as_str()));
    }
}
