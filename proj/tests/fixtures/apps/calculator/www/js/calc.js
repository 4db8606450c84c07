function sum(a, b) { return a + b; }
function product(a, b) { return a * b; }
var display = document.getElementById('display');
