# Controllers package